"""Every rational x off the 2-torsion lands on exactly one quadratic twist.

For y^2 = x^3 - x we lift a handful of x-values, then sort all x of height
at most 12 into twist classes and look at which twists collect the most.
"""

from fractions import Fraction

from twistrank import CurveQ, lift_x, twist_buckets, twist_transport, x_of

E = CurveQ(-1, 0)

print("Lifting single x-values:")
for x in [Fraction(2), Fraction(1, 4), Fraction(25, 24), Fraction(-1, 2)]:
    lift = lift_x(E, x)
    P = lift.point
    print(f"  x = {str(x):>6}  ->  d = {lift.twist:>4}, point ({P.x}, {P.y}) on {P.twisted}")
    assert x_of(P) == x

# 2 and -1/2 share d = 6; so does 25/24, the x of 2P.
print()
print("Moving a point between twists in the same square class:")
P24 = (Fraction(48), Fraction(288))
x6, y6 = twist_transport(E, P24, 24, 6)
print(f"  (48, 288) on E^24  ->  ({x6}, {y6}) on E^6, Kummer x = 2 on both sides")

buckets = twist_buckets(E, 12)
sizes = sorted(buckets.buckets.items(), key=lambda kv: (-len(kv[1]), abs(kv[0])))
print()
print(f"Height <= 12: {buckets.total} x-values, {buckets.skipped} are 2-torsion,")
print(f"the rest fall into {len(buckets.buckets)} twist classes. The busiest:")
for d, pts in sizes[:6]:
    xs = ", ".join(str(x_of(P)) for P in pts[:5])
    print(f"  d = {d:>5}: {len(pts)} points  ({xs}{', ...' if len(pts) > 5 else ''})")
