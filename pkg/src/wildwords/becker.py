"""Tree gadgets, the fibered assembly over a truncated Cantor set, and the
loop calculus of the cone-plus-torus realization.

A gadget is a planar compact set built from a finite tree: a base segment,
one vertical accumulation segment per node, and one zigzag per node that
approaches its vertical without touching it.  The gadget is one piece
exactly when the tree has a designated infinite branch; otherwise the
zigzag side (represented by the corner (0,1)) and the base side
(represented by (0,0)) stay apart.

The assembly stacks one gadget per binary string c of a fixed even length,
wiring the fiber corners to an auxiliary point family indexed by the two
half-strings of c.  Path components are computed symbolically from the
branch rule and the wiring, never by sampling curves: connectivity of the
true limit sets is invisible to any finite mesh.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .relcalc import (
    Atom,
    EquivRelation,
    FinitePartition,
    XWord,
    e_related,
    fe_equivalent,
    relation_from_json,
    relation_to_json,
)


class LengthMismatch(ValueError):
    pass


class OddDepth(ValueError):
    pass


class RenderDepthZero(ValueError):
    pass


class UnknownLocation(ValueError):
    pass


# ---------------------------------------------------------------------------
# Interleaving


def interleave(c0: str, c1: str) -> str:
    """The string with c0 on even positions and c1 on odd positions."""
    if len(c0) != len(c1):
        raise LengthMismatch(f"cannot interleave lengths {len(c0)} and {len(c1)}")
    return "".join(a + b for a, b in zip(c0, c1))


def split(c: str) -> tuple[str, str]:
    """Inverse of interleave: (even positions, odd positions)."""
    return c[0::2], c[1::2]


# ---------------------------------------------------------------------------
# Trees


@dataclass(frozen=True)
class IntBranch:
    """An eventually periodic infinite sequence of nonnegative integers."""

    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        if not self.period:
            raise ValueError("branch period must be nonempty")
        if any(v < 0 for v in self.prefix + self.period):
            raise ValueError("branch entries must be nonnegative")

    def element(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def initial_segment(self, length: int) -> tuple[int, ...]:
        return tuple(self.element(i) for i in range(length))


@dataclass(frozen=True)
class TreeDesc:
    """A finite prefix-closed set of integer sequences, with an optional
    set of designated infinite branches consistent with the nodes."""

    nodes: frozenset[tuple[int, ...]]
    branches: frozenset[IntBranch] = frozenset()

    def __post_init__(self):
        if not self.nodes:
            raise ValueError("a tree needs at least the root node")
        for node in self.nodes:
            if node and node[:-1] not in self.nodes:
                raise ValueError(f"nodes are not prefix-closed: missing {node[:-1]}")
        depth = max(len(node) for node in self.nodes)
        for branch in self.branches:
            for length in range(depth + 1):
                if branch.initial_segment(length) not in self.nodes:
                    raise ValueError(
                        f"designated branch leaves the tree at length {length}"
                    )

    @property
    def has_branch(self) -> bool:
        return bool(self.branches)

    def children(self, node: tuple[int, ...]) -> list[int]:
        return sorted(
            n[-1] for n in self.nodes if len(n) == len(node) + 1 and n[:-1] == node
        )


def single_node_tree() -> TreeDesc:
    return TreeDesc(frozenset({()}))


def one_branch_tree() -> TreeDesc:
    """A path tree with the all-zero branch designated."""
    return TreeDesc(
        frozenset({(), (0,), (0, 0)}),
        frozenset({IntBranch((), (0,))}),
    )


def tree_to_json(tree: TreeDesc) -> dict:
    return {
        "nodes": [list(node) for node in sorted(tree.nodes)],
        "branches": [
            {"prefix": list(b.prefix), "period": list(b.period)}
            for b in sorted(tree.branches, key=lambda b: (b.prefix, b.period))
        ],
    }


def tree_from_json(doc: Union[str, dict]) -> TreeDesc:
    data = json.loads(doc) if isinstance(doc, str) else doc
    nodes = {tuple(node) for node in data.get("nodes", [])}
    nodes.add(())  # the root may be left implicit
    branches = frozenset(
        IntBranch(tuple(b["prefix"]), tuple(b["period"]))
        for b in data.get("branches", [])
    )
    return TreeDesc(frozenset(nodes), branches)


# ---------------------------------------------------------------------------
# Gadget geometry

Point2 = tuple[Fraction, Fraction]
Point3 = tuple[Fraction, Fraction, Fraction]


def node_label(node: tuple[int, ...]) -> str:
    return "e" if not node else ".".join(str(i) for i in node)


@dataclass(frozen=True, eq=True)
class GadgetGeometry:
    """Exact rational planar geometry of one tree gadget inside the unit
    square: straight segments, zigzag vertex chains, and marked points."""

    segments: tuple[tuple[str, Point2, Point2], ...]
    polylines: tuple[tuple[str, tuple[Point2, ...]], ...]
    marked_points: dict[str, Point2] = field(default_factory=dict)


def build_gadget(tree: TreeDesc, render_depth: int) -> GadgetGeometry:
    """Lay the gadget out in [0,1] x [0,1].

    The root occupies the full width with r at (0,1) and its vertical at
    x = 1; each node's zigzag halves its remaining distance to the
    vertical at every vertex, and children recurse into the sub-span below
    their anchor vertex at one-third vertical scale, so an infinite branch
    would descend exactly to the base line y = 0.
    """
    if render_depth < 1:
        raise RenderDepthZero(f"render depth must be >= 1, got {render_depth}")
    zero, one = Fraction(0), Fraction(1)
    segments: list[tuple[str, Point2, Point2]] = [("base", (zero, zero), (one, zero))]
    polylines: list[tuple[str, tuple[Point2, ...]]] = []
    marked: dict[str, Point2] = {
        "corner_0_0": (zero, zero),
        "corner_0_1": (zero, one),
        "base": (Fraction(1, 2), zero),
    }

    def recurse(node: tuple[int, ...], x_left: Fraction, x_right: Fraction,
                top: Fraction, height: Fraction) -> None:
        lab = node_label(node)
        segments.append((f"l_{lab}", (x_right, zero), (x_right, top)))
        marked[f"l_{lab}_bottom"] = (x_right, zero)
        marked[f"l_{lab}_top"] = (x_right, top)
        marked[f"r_{lab}"] = (x_left, top)
        children = tree.children(node)
        n_verts = max(render_depth, (2 * children[-1] + 2) if children else 0)
        span = x_right - x_left
        verts: list[Point2] = [(x_left, top)]
        for k in range(1, n_verts + 1):
            x = x_left + span * (1 - Fraction(1, 2 ** (k + 1)))
            y = top if k % 2 == 0 else top - height / 2
            verts.append((x, y))
        polylines.append((f"zig_{lab}", tuple(verts)))
        for i in children:
            j = 2 * i + 1  # the i-th lower vertex anchors child i
            child = node + (i,)
            anchor_x = verts[j][0]
            segments.append(
                (f"drop_{node_label(child)}", (anchor_x, top - height / 2),
                 (anchor_x, top - height))
            )
            recurse(child, anchor_x, verts[j + 1][0], top - height, height / 3)

    recurse((), zero, one, one, Fraction(2, 3))
    return GadgetGeometry(tuple(segments), tuple(polylines), marked)


@dataclass(frozen=True, eq=True)
class ComponentMap:
    """Component id per symbolic piece; id 0 always contains (0,0), and
    id 1 is the (0,1) side when the gadget is disconnected."""

    assignment: dict[str, int]
    count: int

    @property
    def path_connected(self) -> bool:
        return self.count == 1

    def of(self, label: str) -> int:
        if label not in self.assignment:
            raise UnknownLocation(f"no such piece: {label!r}")
        return self.assignment[label]


def gadget_components(tree: TreeDesc) -> ComponentMap:
    """Assign component ids by the branch rule.

    With a designated branch everything is one piece.  Without one, the
    base and the verticals form the (0,0) side, while the zigzags, their
    starting points, and the drop segments form the (0,1) side: a zigzag
    only accumulates on its vertical, it never reaches it.
    """
    base_side: list[str] = ["corner_0_0", "base"]
    zig_side: list[str] = ["corner_0_1"]
    for node in sorted(tree.nodes):
        lab = node_label(node)
        base_side.append(f"l_{lab}")
        zig_side.append(f"r_{lab}")
        zig_side.append(f"zig_{lab}")
        if node:
            zig_side.append(f"drop_{lab}")
    if tree.has_branch:
        assignment = {lab: 0 for lab in base_side + zig_side}
        return ComponentMap(assignment, count=1)
    assignment = {lab: 0 for lab in base_side}
    assignment.update({lab: 1 for lab in zig_side})
    return ComponentMap(assignment, count=2)


# ---------------------------------------------------------------------------
# The fibered assembly


def cantor_value(bits: str) -> Fraction:
    """Middle-thirds embedding of a finite binary string."""
    val = Fraction(0)
    for i, b in enumerate(bits):
        val += Fraction(2 * int(b), 3 ** (i + 1))
    return val


def cprime_coordinates(bits: str) -> Point3:
    return (Fraction(-1, 2) - cantor_value(bits), Fraction(1, 2), Fraction(0))


@dataclass(eq=True)
class FiberAssembly:
    """One gadget fiber per binary string of length ``fiber_depth``, wired
    to the auxiliary half-string points: a type I segment joins the fiber's
    (0,0) corner to the point of its even half, a type II segment joins the
    (0,1) corner to the point of its odd half."""

    fiber_depth: int
    points: tuple[str, ...]
    relation: EquivRelation
    fibers: dict[str, TreeDesc]
    segments_I: tuple[tuple[str, str], ...]   # (fiber, even half)
    segments_II: tuple[tuple[str, str], ...]  # (fiber, odd half)
    cprime_coords: dict[str, Point3]
    fiber_vals: dict[str, Fraction]


def _all_strings(length: int) -> list[str]:
    return [format(i, f"0{length}b") if length else "" for i in range(2 ** length)]


def build_assembly(relation: EquivRelation, depth: int) -> FiberAssembly:
    """Construct the assembly for a decidable relation on half-strings.

    Each fiber's tree is built outright: one designated branch exactly
    when the two halves are related, else a branchless single node.
    """
    if depth < 2 or depth % 2 != 0:
        raise OddDepth(f"fiber depth must be a positive even number, got {depth}")
    points = tuple(_all_strings(depth))
    halves = _all_strings(depth // 2)
    fibers: dict[str, TreeDesc] = {}
    seg_i = []
    seg_ii = []
    for c in points:
        even, odd = split(c)
        related = e_related(relation, Atom(even), Atom(odd))
        fibers[c] = one_branch_tree() if related else single_node_tree()
        seg_i.append((c, even))
        seg_ii.append((c, odd))
    return FiberAssembly(
        fiber_depth=depth,
        points=points,
        relation=relation,
        fibers=fibers,
        segments_I=tuple(seg_i),
        segments_II=tuple(seg_ii),
        cprime_coords={s: cprime_coordinates(s) for s in halves},
        fiber_vals={c: cantor_value(c) for c in points},
    )


Node = tuple  # ("cprime", s) or ("fiber", c, "base"/"zig")


def incidence_components(a: FiberAssembly) -> dict[Node, int]:
    """Connected components of the symbolic incidence graph."""
    adjacency: dict[Node, list[Node]] = {}

    def add_edge(x: Node, y: Node) -> None:
        adjacency.setdefault(x, []).append(y)
        adjacency.setdefault(y, []).append(x)

    for s in a.cprime_coords:
        adjacency.setdefault(("cprime", s), [])
    for c in a.points:
        base, zig = ("fiber", c, "base"), ("fiber", c, "zig")
        adjacency.setdefault(base, [])
        adjacency.setdefault(zig, [])
        if a.fibers[c].has_branch:
            add_edge(base, zig)
    for c, s in a.segments_I:
        add_edge(("fiber", c, "base"), ("cprime", s))
    for c, s in a.segments_II:
        add_edge(("fiber", c, "zig"), ("cprime", s))

    component: dict[Node, int] = {}
    next_id = 0
    for start in adjacency:
        if start in component:
            continue
        stack = [start]
        component[start] = next_id
        while stack:
            node = stack.pop()
            for other in adjacency[node]:
                if other not in component:
                    component[other] = next_id
                    stack.append(other)
        next_id += 1
    return component


def _check_fiber_label(a: FiberAssembly, c: str) -> None:
    if len(c) != a.fiber_depth or any(b not in "01" for b in c):
        raise LengthMismatch(
            f"expected a binary string of length {a.fiber_depth}, got {c!r}"
        )


def assembly_connected(a: FiberAssembly, c0: str, c1: str) -> bool:
    """Are the fibers of c0 and c1 in the same path component?

    A fiber is entered through its base corner, so the query resolves to
    reachability between the base-side pieces of the two fibers.
    """
    _check_fiber_label(a, c0)
    _check_fiber_label(a, c1)
    comp = incidence_components(a)
    return comp[("fiber", c0, "base")] == comp[("fiber", c1, "base")]


def canonical_point(a: FiberAssembly, location: tuple) -> str:
    """Send any location to a half-string point in its path component.

    Locations are symbolic: ("cprime", s), ("segment", "I"/"II", c), or
    ("fiber", c, side) with side "base", "vertical", or "zigzag".  Numeric
    coordinates without a piece tag are not classified.
    """
    if not isinstance(location, tuple) or not location:
        raise UnknownLocation(f"unrecognized location {location!r}")
    kind = location[0]
    if kind == "cprime" and len(location) == 2:
        s = location[1]
        if s not in a.cprime_coords:
            raise UnknownLocation(f"no auxiliary point {s!r}")
        return s
    if kind == "segment" and len(location) == 3:
        seg_type, c = location[1], location[2]
        _check_fiber_label(a, c)
        even, odd = split(c)
        if seg_type == "I":
            return even
        if seg_type == "II":
            return odd
        raise UnknownLocation(f"segment type must be 'I' or 'II', got {seg_type!r}")
    if kind == "fiber" and len(location) == 3:
        c, side = location[1], location[2]
        _check_fiber_label(a, c)
        even, odd = split(c)
        if side in ("base", "vertical"):
            return even
        if side == "zigzag":
            return odd
        raise UnknownLocation(f"fiber side must be base/vertical/zigzag, got {side!r}")
    raise UnknownLocation(f"unrecognized location {location!r}")


# ---------------------------------------------------------------------------
# Exact segment disjointness


def _sub(p: Point3, q: Point3) -> Point3:
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def _cross(u: Point3, v: Point3) -> Point3:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _dot(u: Point3, v: Point3) -> Fraction:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _segment_intersection(
    a0: Point3, a1: Point3, b0: Point3, b1: Point3
) -> Union[None, Point3, str]:
    """Exact intersection of two closed segments: None, a single point, or
    the marker "overlap" for a shared sub-segment."""
    u = _sub(a1, a0)
    v = _sub(b1, b0)
    w = _sub(b0, a0)
    n = _cross(u, v)
    if n == (0, 0, 0):  # parallel
        if _cross(w, u) != (0, 0, 0):
            return None
        uu = _dot(u, u)
        if uu == 0:  # degenerate first segment
            t = Fraction(0)
            inside = _cross(_sub(a0, b0), v) == (0, 0, 0)
            vv = _dot(v, v)
            if not inside or vv == 0:
                return a0 if a0 == b0 else None
            s = _dot(_sub(a0, b0), v) / vv
            return a0 if 0 <= s <= 1 else None
        t0 = _dot(w, u) / uu
        t1 = _dot(_sub(b1, a0), u) / uu
        lo, hi = min(t0, t1), max(t0, t1)
        lo, hi = max(lo, Fraction(0)), min(hi, Fraction(1))
        if lo > hi:
            return None
        if lo == hi:
            return (a0[0] + lo * u[0], a0[1] + lo * u[1], a0[2] + lo * u[2])
        return "overlap"
    if _dot(w, n) != 0:  # skew lines
        return None
    for i, j in ((0, 1), (0, 2), (1, 2)):
        det = u[i] * v[j] - u[j] * v[i]
        if det != 0:
            t = (w[i] * v[j] - w[j] * v[i]) / det
            s = (u[i] * w[j] - u[j] * w[i]) / det
            break
    if not (0 <= t <= 1 and 0 <= s <= 1):
        return None
    p = (a0[0] + t * u[0], a0[1] + t * u[1], a0[2] + t * u[2])
    q = (b0[0] + s * v[0], b0[1] + s * v[1], b0[2] + s * v[2])
    return p if p == q else None


def _realized_segments(a: FiberAssembly) -> list[tuple[Point3, Point3]]:
    """(corner endpoint, auxiliary endpoint) per wiring segment."""
    zero, one = Fraction(0), Fraction(1)
    out = []
    for c, s in a.segments_I:
        out.append(((zero, zero, a.fiber_vals[c]), a.cprime_coords[s]))
    for c, s in a.segments_II:
        out.append(((zero, one, a.fiber_vals[c]), a.cprime_coords[s]))
    return out


def segment_disjointness_check(a: FiberAssembly) -> bool:
    """True when distinct wiring segments only ever meet at a shared
    endpoint on the auxiliary point family."""
    segs = _realized_segments(a)
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            hit = _segment_intersection(*segs[i], *segs[j])
            if hit is None:
                continue
            if hit == "overlap":
                return False
            if hit != segs[i][1] or hit != segs[j][1]:
                return False
    return True


# ---------------------------------------------------------------------------
# Serialization


def _fraction_to_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def export_json(a: FiberAssembly) -> str:
    doc = {
        "fiber_depth": a.fiber_depth,
        "points": list(a.points),
        "relation": relation_to_json(a.relation),
        "fibers": {c: tree_to_json(t) for c, t in sorted(a.fibers.items())},
        "segments_i": [list(pair) for pair in a.segments_I],
        "segments_ii": [list(pair) for pair in a.segments_II],
        "cprime_coords": {
            s: [_fraction_to_text(v) for v in coords]
            for s, coords in sorted(a.cprime_coords.items())
        },
        "fiber_vals": {
            c: _fraction_to_text(v) for c, v in sorted(a.fiber_vals.items())
        },
    }
    return json.dumps(doc, sort_keys=True)


def load_assembly(doc: Union[str, dict]) -> FiberAssembly:
    data = json.loads(doc) if isinstance(doc, str) else doc
    return FiberAssembly(
        fiber_depth=data["fiber_depth"],
        points=tuple(data["points"]),
        relation=relation_from_json(data["relation"]),
        fibers={c: tree_from_json(t) for c, t in data["fibers"].items()},
        segments_I=tuple((c, s) for c, s in data["segments_i"]),
        segments_II=tuple((c, s) for c, s in data["segments_ii"]),
        cprime_coords={
            s: tuple(Fraction(v) for v in coords)
            for s, coords in data["cprime_coords"].items()
        },
        fiber_vals={c: Fraction(v) for c, v in data["fiber_vals"].items()},
    )


def _svg_coord(x: Fraction) -> str:
    text = f"{float(1000 * x):.4f}"
    return text.rstrip("0").rstrip(".") if "." in text else text


def _svg_point(p: Point2) -> str:
    # flip y so the unit square renders with (0,1) at the top
    return f"{_svg_coord(p[0])} {_svg_coord(1 - p[1])}"


def export_svg(g: GadgetGeometry) -> str:
    """Deterministic SVG with one path per segment and per polyline."""
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1000 1000">',
        '<g fill="none" stroke="black" stroke-width="2">',
    ]
    for label, p0, p1 in g.segments:
        lines.append(
            f'<path id="{label}" d="M {_svg_point(p0)} L {_svg_point(p1)}"/>'
        )
    for label, verts in g.polylines:
        d = "M " + " L ".join(_svg_point(p) for p in verts)
        lines.append(f'<path id="{label}" d="{d}"/>')
    lines.append("</g>")
    for label in sorted(g.marked_points):
        p = g.marked_points[label]
        cx, cy = _svg_point(p).split()
        lines.append(f'<circle id="mark_{label}" cx="{cx}" cy="{cy}" r="4"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Realization loop calculus


@dataclass(eq=True)
class RealizationDescriptor:
    """The assembly together with the cone basepoint; homotopy of loops is
    decided by word equivalence over the assembly's connectivity relation
    on fiber labels."""

    assembly: FiberAssembly
    loop_relation: FinitePartition
    basepoint: str = "b"


def build_realization(relation: EquivRelation, depth: int) -> RealizationDescriptor:
    assembly = build_assembly(relation, depth)
    comp = incidence_components(assembly)
    classes: dict[int, set[str]] = {}
    for c in assembly.points:
        classes.setdefault(comp[("fiber", c, "base")], set()).add(c)
    loop_relation = FinitePartition(
        tuple(frozenset(group) for _, group in sorted(classes.items()))
    )
    return RealizationDescriptor(assembly=assembly, loop_relation=loop_relation)


def loop_homotopic(desc: RealizationDescriptor, w1: XWord, w2: XWord) -> bool:
    """Homotopy of generator-loop words in the realized space: word
    equivalence over the fiber connectivity relation."""
    return fe_equivalent(desc.loop_relation, w1, w2)
