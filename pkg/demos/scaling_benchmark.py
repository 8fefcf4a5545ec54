"""Scaling behavior of the two builders and the two engines.

Run with ``python3 demos/scaling_benchmark.py``.  Random contexts of
growing height are built with the raw-row scanner and with condensed
adjacency lists; the table reports concept counts, the adjacency elements
each variant touched, and wall time.  The largest instance is then built
again on the compiled engine.
"""
import random
import time

from galois_lattice import (
    build_lattice_bfs_basic, build_lattice_two_level,
)
from galois_lattice.cli import random_context


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def main():
    print("random contexts, 25 attributes, incidence density 0.3\n")
    print(f"{'objects':>8} {'concepts':>9} {'edges':>9} "
          f"{'touches basic':>14} {'touches cond.':>14} {'saved':>6} "
          f"{'t basic':>8} {'t cond.':>8}")
    for n in (250, 500, 1000, 2000):
        ctx = random_context(random.Random(n), n, 25, 0.3)
        (lat_b, st_b), tb = timed(build_lattice_bfs_basic, ctx,
                                  engine="python")
        (lat_c, st_c), tc = timed(build_lattice_two_level, ctx,
                                  engine="python")
        assert lat_b == lat_c
        saved = 1 - st_c.touches_total / max(1, st_b.touches_total)
        print(f"{n:>8} {len(lat_c):>9} {lat_c.edge_count:>9} "
              f"{st_b.touches_total:>14} {st_c.touches_total:>14} "
              f"{saved:>6.1%} {tb:>7.2f}s {tc:>7.2f}s")
    print()

    n = 2000
    ctx = random_context(random.Random(n), n, 25, 0.3)
    (_, _), warm = timed(build_lattice_two_level,
                         random_context(random.Random(1), 50, 12, 0.4),
                         engine="kernel")
    (lat_k, _), tk = timed(build_lattice_two_level, ctx, engine="kernel")
    (lat_p, _), tp = timed(build_lattice_two_level, ctx, engine="python")
    assert len(lat_k) == len(lat_p) and lat_k.edge_count == lat_p.edge_count
    print(f"largest instance on both engines "
          f"({len(lat_k)} concepts, {lat_k.edge_count} edges):")
    print(f"  pure python : {tp:6.2f} s")
    print(f"  compiled    : {tk:6.2f} s   "
          f"(plus {warm:.2f} s one-time compile/load)")


if __name__ == "__main__":
    main()
