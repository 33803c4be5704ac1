"""Certify that two points on y^2 = x^3 + 17 are independent.

Each point is reduced at a few primes q where 3 divides #E(F_q), pushed
through a surjection onto F_3, and the resulting matrix is tested for a
nonzero determinant. A dependent pair (P, 2P) makes the test fail.
"""

import json

from twistrank import CommonLift, CurveQ, TwistPoint, certify_rank, reduce_curve
from twistrank.certificate import dumps, verify_document

E = CurveQ(0, 17)
P = TwistPoint(E, 1, -2, 3)
Q = TwistPoint(E, 1, -1, 4)

cert = certify_rank(E, CommonLift(1, (P, Q)), p=3)
print(f"points: ({P.x}, {P.y}), ({Q.x}, {Q.y})")
for q, pi in zip(cert.places, cert.projections):
    C = reduce_curve(E, 1, q)
    print(f"  q = {q:>3}: #E(F_q) = {C.order():>3} = {pi.structure.m} x {pi.structure.n}")
print(f"matrix over F_3: {cert.matrix}, det = {cert.determinant}")
print(f"no 3-torsion over Q (witness q = {cert.torsion_witness})")
print(f"verdict: {cert.verdict}")

doc = json.loads(dumps(cert))
print(f"re-verified from JSON: {verify_document(doc).verdict}")

twoP = TwistPoint(E, 1, *E.mul(2, P.xy))
bad = certify_rank(E, CommonLift(1, (P, twoP)), p=3)
print()
print(f"P and 2P = ({twoP.x}, {twoP.y}): det = {bad.determinant}, verdict {bad.verdict}")
