"""Node touches per head deletion as the window grows.

Fits touches ~ c * w^k on a log-log scale per input shape; the worst case
should stay at or below linear, with max touches under 8w.

    python scripts/delete_cost.py --windows 32 64 128 256 512 1024
"""
import argparse
import math
import random

from qnlis.maintenance import WindowState


def measure(shape, w, slides, seed):
    rng = random.Random(seed)
    win = WindowState(w)
    for i in range(w + slides):
        if shape == "random":
            v = rng.random()
        elif shape == "ascending":
            v = i
        elif shape == "sawtooth":
            v = i % 17
        else:
            v = i // 8 + rng.random()
        win.slide(v)
    c = win.structure.counters
    return c.mean_delete_touches(), c.max_delete_touches


def slope(xs, ys):
    lx = [math.log(x) for x in xs]
    ly = [math.log(max(y, 1e-9)) for y in ys]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    num = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    den = sum((a - mx) ** 2 for a in lx)
    return num / den if den else float("nan")


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--windows", type=int, nargs="+", default=[32, 64, 128, 256, 512, 1024])
    p.add_argument("--slides", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    for shape in ("random", "ascending", "sawtooth", "plateaus"):
        means = []
        print(f"{shape}")
        for w in args.windows:
            mean, worst = measure(shape, w, args.slides, args.seed)
            means.append(mean)
            print(f"  w={w:<6} mean={mean:9.1f}  max={worst:7d}  max/w={worst / w:5.2f}")
        print(f"  fitted exponent of mean touches: {slope(args.windows, means):.2f}")


if __name__ == "__main__":
    main()
