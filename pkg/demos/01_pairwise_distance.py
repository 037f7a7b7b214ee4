"""Pairwise MSM distance: the three operations and their prices.

The distance charges |w| to move (shift) a point by w, and a flat c to
split a point into two copies or merge two equal neighbors.  Small c
favors stretching and compressing; large c degrades toward a
point-by-point comparison.
"""

from msmmean import msm_distance

x = [4.0, 5.0, 5.0, 10.0]
y = [10.0, 7.0, 8.0]

print(f"x = {x}")
print(f"y = {y}")
print()

for c in (0.01, 0.1, 1.0, 10.0):
    d = msm_distance(x, y, c)
    print(f"  c = {c:>5}: d(x, y) = {d:.6g}")

print()
print("symmetry:", msm_distance(x, y, 0.1), "==", msm_distance(y, x, 0.1))
print("identity:", msm_distance(x, x, 0.1), "== 0.0")

# a split in action: one point fans out to cover a plateau
a = [3.0]
b = [3.0, 3.0, 3.0, 3.0]
print()
print(f"d({a}, {b}) with c=0.1 -> {msm_distance(a, b, 0.1):.3f}  (three splits)")
