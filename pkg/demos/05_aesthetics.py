"""The 13 layout aesthetics measures on contrasting layouts.

A mirrored four-quadrant grid scores perfectly on balance, equilibrium,
symmetry and homogeneity; piling everything into one corner collapses them.
"""

from viscom.aesthetics import MEASURE_NAMES, LayoutObject, ObjectSet, measure_vector


def layout(boxes, label):
    objects = tuple(LayoutObject(box=tuple(map(float, b)), kind="text") for b in boxes)
    objset = ObjectSet(objects=objects, page_width=100.0, page_height=100.0)
    vector = measure_vector(objset)
    print(f"\n{label}")
    for name, value in zip(MEASURE_NAMES + ("order_and_complexity",), vector):
        print(f"  {name:22} {value:.4f}")


layout(
    [(10, 10, 20, 20), (70, 10, 20, 20), (10, 70, 20, 20), (70, 70, 20, 20)],
    "mirrored four-quadrant grid",
)

layout(
    [(0, 0, 18, 14), (3, 16, 22, 9), (0, 28, 15, 20)],
    "everything crammed into the top-left corner",
)

layout(
    [(10, 5, 80, 25), (10, 40, 80, 25), (10, 75, 80, 20)],
    "three aligned full-width bands",
)
