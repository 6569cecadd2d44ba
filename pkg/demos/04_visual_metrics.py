"""The eight screenshot features on a few synthetic images."""

import numpy as np

from viscom.snapshot import Screenshot
from viscom.visual import VISUAL_FEATURE_NAMES, visual_features


def show(label, pixels):
    shot = Screenshot(pixels=pixels, width=pixels.shape[1], height=pixels.shape[0])
    vector = visual_features(shot)
    print(f"\n{label}")
    for name, value in zip(VISUAL_FEATURE_NAMES, vector):
        print(f"  {name:18} {value:.4f}")


white = np.full((120, 160, 3), 255, dtype=np.uint8)
show("all white", white)

red = np.zeros((120, 160, 3), dtype=np.uint8)
red[:, :, 0] = 255
show("pure red", red)

checker = np.zeros((120, 160, 3), dtype=np.uint8)
checker[::2, ::2] = (255, 200, 40)
checker[1::2, 1::2] = (30, 60, 200)
show("checkerboard (noisy, so larger encoded sizes)", checker)
