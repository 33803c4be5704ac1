"""Hunt for twists of y^2 = x^3 - x with rank at least 1.

The congruent number curve makes a good test bed: d is a congruent number
exactly when E^d has positive rank, so every certified d below is one.
"""

from twistrank import CurveQ, SearchConfig, rank_r_twist_search

E = CurveQ(-1, 0)
result = rank_r_twist_search(SearchConfig(E, r=1, height_bound=10, p=3))

positive = sorted({abs(c.twist) for c in result.certificates})
print(f"{result.buckets_tried} twist classes tried, {len(result.certificates)} certified")
print("certified |d|:", ", ".join(map(str, positive)))

print()
for cert in result.certificates[:5]:
    (P,) = cert.points
    print(f"d = {cert.twist:>5}  point ({P.x}, {P.y})  places {cert.places}")

# 7 is congruent too; its first Kummer point is x = 16/9, height 16
missing = [n for n in (5, 6, 7, 13, 14, 15) if n not in positive]
print()
print("small congruent numbers not reached at this height:", missing)
