"""
Max-cut through the moment LP
=============================

Order-t Handelman bounds for max-cut, computed as an LP over moments y_S.
"""

from fractions import Fraction

from handelman_rank import graphs as gr
from handelman_rank.graphs import WeightedGraph
from handelman_rank.maxcut import maxcut_handelman_bound, maxcut_primal_bound, maxcut_rank
from handelman_rank.stable_set import max_cut_value

###########################################################################
# For the pentagon, order 2 gives the total edge weight and order 3 is
# already exact.

c5 = gr.unweighted(gr.odd_circuit(5))
print("mc(C5) =", max_cut_value(c5))
for t in (2, 3):
    print(f"order {t}: moment {maxcut_handelman_bound(c5, t).value}, "
          f"primal {maxcut_primal_bound(c5, t).value}")

###########################################################################
# With signed weights, order 2 keeps only the positive edges: each y_ij
# ranges over [-1, 1] independently.

g = WeightedGraph.build(gr.odd_circuit(5), [1] * 5, "CUSTOM",
                        {(1, 2): 3, (2, 3): -2, (3, 4): Fraction(1, 2), (4, 5): -1, (1, 5): 1})
print("signed: order 2 =", maxcut_handelman_bound(g, 2).value, " mc =", max_cut_value(g))

###########################################################################
# Complete graphs: odd n needs the full order, even n one less.

for n in range(3, 7):
    t, trace = maxcut_rank(gr.unweighted(gr.complete(n)))
    print(f"K{n}: rank {t}, trace {dict((k, str(v)) for k, v in trace.items())}")
