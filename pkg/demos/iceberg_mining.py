"""Frequent closed itemsets via iceberg lattices.

Run with ``python3 demos/iceberg_mining.py``.  A random transaction
database is mined at decreasing support thresholds; each threshold keeps
exactly the concepts whose extent (transaction set) is large enough,
pruning whole subtrees the moment support falls below the bar.
"""
import random

from galois_lattice import Context, build_iceberg, build_lattice_two_level
from galois_lattice.builders import _iceberg_with_stats

ITEMS = ["bread", "milk", "eggs", "butter", "jam", "coffee", "tea",
         "sugar", "rice", "salt"]


def random_baskets(rng, n):
    """Transactions with a few popular staples and a long random tail."""
    rows = []
    for _ in range(n):
        basket = {i for i in range(3) if rng.random() < 0.55}
        basket |= {i for i in range(3, len(ITEMS)) if rng.random() < 0.18}
        rows.append(sorted(basket))
    return Context(n, len(ITEMS), rows,
                   [f"t{k}" for k in range(n)], ITEMS)


def main():
    rng = random.Random(20_08)
    ctx = random_baskets(rng, 600)
    print(f"transaction database: {ctx.n} baskets over {ctx.m} items")
    nat, _ = build_lattice_two_level(ctx)
    print(f"all closed itemsets: {len(nat)}\n")

    print(f"{'min support':>12} | {'closed itemsets':>15} | "
          f"{'subtrees pruned':>15}")
    print("-" * 50)
    for theta in (300, 200, 120, 60, 20, 5, 1):
        lat, stats = _iceberg_with_stats(ctx, theta, "extent-dict", "auto")
        print(f"{theta:>12} | {len(lat):>15} | {stats.support_skips:>15}")
    print()

    theta = 120
    lat = build_iceberg(ctx, theta)
    ranked = sorted(range(len(lat)),
                    key=lambda i: (-lat.support(i), lat.intent(i)))
    print(f"itemsets bought together by at least {theta} of "
          f"{ctx.n} customers:")
    for i in ranked:
        items = ", ".join(ctx.attr_names[a] for a in lat.intent(i))
        print(f"  support {lat.support(i):>3}: {{{items or ''}}}")
    print()

    # the two closure machineries must agree item for item
    a = build_iceberg(ctx, theta, "extent-dict")
    b = build_iceberg(ctx, theta, "intent-dict")
    assert set(a.concepts) == set(b.concepts)
    print("extent-dict and intent-dict modes produced identical results.")


if __name__ == "__main__":
    main()
