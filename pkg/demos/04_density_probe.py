"""How evenly do Kummer points spread over local twist classes?

We tabulate, for all x of height at most 30 on y^2 = x^3 - x, the square
class of the twist at 5 and at 7, and print the table with row shares.
"""

from twistrank import CurveQ, Place, density_probe

E = CurveQ(-1, 0)
places = [Place(5), Place(7)]
report = density_probe(E, places, 30)

reps5 = sorted({v[0] for v in report.all_vectors()})
reps7 = sorted({v[1] for v in report.all_vectors()})
print(f"{report.total} points; rows: class at 5, columns: class at 7")
print("       " + "".join(f"{r:>7}" for r in reps7))
for a in reps5:
    row = [report.class_counts.get((a, b), 0) for b in reps7]
    print(f"{a:>5}  " + "".join(f"{n:>7}" for n in row) + f"   ({sum(row) / report.total:.1%})")

print()
print("empty cells:", report.missed or "none")
