"""Maintenance throughput and insert probes across window sizes and input shapes.

    python scripts/throughput.py --items 20000 --windows 16 64 256 1024
"""
import argparse
import random

from qnlis.cli import RunConfig, benchmark

SHAPES = {
    "random": lambda rng, i: rng.random(),
    "digits": lambda rng, i: rng.randint(0, 9),
    "ascending": lambda rng, i: i,
    "descending": lambda rng, i: -i,
    "random-walk": None,  # stateful, built below
}


def stream(shape, n, seed):
    rng = random.Random(seed)
    if shape == "random-walk":
        x = 0.0
        for _ in range(n):
            x += rng.gauss(0, 1)
            yield x
        return
    gen = SHAPES[shape]
    for i in range(n):
        yield gen(rng, i)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--items", type=int, default=20_000)
    p.add_argument("--windows", type=int, nargs="+", default=[16, 64, 256, 1024])
    p.add_argument("--shapes", nargs="+", default=list(SHAPES), choices=list(SHAPES))
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    print(f"{'shape':<12} {'w':>6} {'items/s':>10} {'max m':>6} {'probes':>7} {'bound':>6} {'touch/del':>10} {'max/w':>6}")
    for shape in args.shapes:
        for w in args.windows:
            s = benchmark(RunConfig(w), stream(shape, args.items, args.seed))
            print(f"{shape:<12} {w:>6} {s['items_per_second']:>10.0f} {s['max_lists']:>6} "
                  f"{s['mean_insert_probes']:>7.2f} {s['probe_bound_at_window']:>6} "
                  f"{s['mean_delete_touches']:>10.1f} {s['max_delete_touches'] / w:>6.2f}")


if __name__ == "__main__":
    main()
