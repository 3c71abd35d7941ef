"""
Handelman rank of the pentagon
==============================

Walk through the bounds for C_5 order by order and read off a certificate.
"""

###########################################################################
# The pentagon has stability number 2 and fractional stability number 5/2.

from handelman_rank import graphs as gr
from handelman_rank import (fractional_stability, handelman_rank, rank_bounds, stability_number,
                            stable_set_bound, stable_set_poly, verify_certificate)

c5 = gr.unweighted(gr.odd_circuit(5))
print("alpha  =", stability_number(c5))
print("alpha* =", fractional_stability(c5))

###########################################################################
# Order 1 cannot absorb the edge terms, order 2 gives alpha*, and order 3
# closes the gap.

result = handelman_rank(c5)
for t, value in result.trace.items():
    print(f"p_han^({t}) = {value}")
print("rank =", result.rank)

###########################################################################
# The closed-form bounds bracket the rank.

print(rank_bounds(c5))

###########################################################################
# The order-3 LP also returns its certificate: positive multiples of
# products x^I (1-x)^(T-I) summing to 2 - p.

cert = stable_set_bound(c5, 3).certificate
for line in cert.product_form():
    print(" ", line)
print("verified:", verify_certificate(cert, stable_set_poly(c5)))
