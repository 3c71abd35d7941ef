"""
Comparing LP hierarchies
========================

Handelman, Sherali-Adams, the first Lovasz-Schrijver level and the
copositive zeta parameter on a few small graphs.
"""

from handelman_rank import graphs as gr
from handelman_rank import (handelman_rank, kp_rank, ls_operator_bound, sherali_adams_bound,
                            stability_number, stable_set_bound, zeta_closed_form)

graphs = {
    "K4": gr.unweighted(gr.complete(4)),
    "W5": gr.unweighted(gr.odd_wheel(5)),
    "G2": gr.unweighted(gr.liptak_tuncel(2)),
}

###########################################################################
# The Sherali-Adams variant never exceeds the Handelman bound at the same
# order, and at order 3 the first Lovasz-Schrijver level lands on the
# same number here.

for name, g in graphs.items():
    row = [f"{name}: alpha={stability_number(g)}", f"ls1={ls_operator_bound(g).value}"]
    for t in (2, 3):
        row.append(f"sa{t}={sherali_adams_bound(g, t).value}")
        row.append(f"han{t}={stable_set_bound(g, t, certificate=False).value}")
    print("  ".join(row))

###########################################################################
# The zeta parameter is infinite for small orders and only rounds down to
# alpha after alpha^2 - 1 steps, while the Handelman rank can stay small.

for name, g in graphs.items():
    a = int(stability_number(g))
    zs = [str(zeta_closed_form(a, t)) for t in range(0, 5)]
    print(f"{name}: rk_H={handelman_rank(g).rank} rk_KP={kp_rank(g.graph)} zeta(0..4)={zs}")
