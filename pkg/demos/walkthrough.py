"""A guided tour of the builder on a four-object context.

Run with ``python3 demos/walkthrough.py``.  The script prints every stage
of the construction on a context small enough to check by hand: the
derivation operators, one sprout, the condensed adjacency lists, and the
finished lattice in both natural and completed modes.
"""
from galois_lattice import (
    Context, build_lattice_two_level, complete_bottom, derive_attr,
    derive_obj, engine, lattice_document, top_concept, write_lattice,
)


def names(ctx, objs=None, attrs=None):
    if objs is not None:
        return "".join(ctx.object_names[g] for g in objs) or "{}"
    return "".join(ctx.attr_names[a] for a in attrs) or "{}"


def show_table(ctx):
    print("incidence table:")
    print("     " + " ".join(ctx.attr_names))
    for g in range(ctx.n):
        row = ["X" if i in ctx.rows[g] else "." for i in range(ctx.m)]
        print(f"  {ctx.object_names[g]}  " + " ".join(row))
    print()


def main():
    ctx = Context(
        4, 4,
        incidence=[[0, 2], [0, 1, 3], [0, 2], [1, 3]],
        object_names=["a", "b", "c", "d"],
        attr_names=["1", "2", "3", "4"],
    )
    show_table(ctx)

    print("derivation operators:")
    print(f"  attributes shared by a,b      -> {names(ctx, attrs=derive_attr((0, 1), ctx))}")
    print(f"  objects carrying attribute 1  -> {names(ctx, objs=derive_obj((0,), ctx))}")
    print(f"  objects carrying both 2 and 4 -> {names(ctx, objs=derive_obj((1, 3), ctx))}")
    print()

    top = top_concept(ctx)
    print(f"top concept: ({names(ctx, objs=top.extent)}, "
          f"{names(ctx, attrs=top.intent)})")
    print()

    # one sprout: scan each object's row once, grouping attributes whose
    # restricted columns pick out the same objects
    view = engine.raw_view(ctx, top.extent, top.intent)
    kids = engine.sort_children(engine.sprout(top.extent, None, view))
    print("children of the top concept (one scan of the table):")
    for c in kids:
        print(f"  extent {names(ctx, objs=c.extent):4s}  "
              f"attribute class {names(ctx, attrs=c.class_attrs):3s}  "
              f"candidate intent size {c.candidate_intent_size}")
    print()

    # condensation: each child class becomes one symbol, so deeper scans
    # walk short per-object class lists instead of raw attribute rows
    cond = engine.condense(kids, top.extent)
    print("condensed adjacency lists (one symbol per class):")
    for g in top.extent:
        syms = cond.cnbr[g]
        classes = ", ".join(names(ctx, attrs=kids[s].class_attrs)
                            for s in syms)
        raw = len(ctx.rows[g])
        print(f"  {ctx.object_names[g]}: {len(syms)} symbols [{classes}]"
              f"  (raw row has {raw})")
    print()

    lat, stats = build_lattice_two_level(ctx)
    print(f"natural lattice: {len(lat)} concepts, {lat.edge_count} edges")
    for i in range(len(lat)):
        print(f"  #{i}: ({names(ctx, objs=lat.extent(i))}, "
              f"{names(ctx, attrs=lat.intent(i))})")
    print("covering edges (larger extent -> smaller):")
    for u, v in lat.edges:
        print(f"  {names(ctx, objs=lat.extent(u))} -> "
              f"{names(ctx, objs=lat.extent(v))}")
    print()
    print(f"work counters: {stats.as_dict()}")
    print()

    full = complete_bottom(lat, ctx)
    print(f"completed lattice: {len(full)} concepts, {full.edge_count} edges "
          f"(bottom adjoined as #{full.bottom_id})")
    print()

    print("text rendering (support-sorted):")
    doc = lattice_document(full, ctx)
    print(write_lattice(doc, "text"))


if __name__ == "__main__":
    main()
