"""Decorated graphs, edge contraction, and degeneration splittings.

A stable graph carries genus and curve-class decorations on vertices,
edges as vertex-index pairs (a loop repeats the index), and labeled legs,
optionally relative with contact multiplicities.  Splittings of a parent
graph into a pair of relative graphs are enumerated under the guidance of
a scenario-supplied class splitter and verified by re-gluing; each
enumerated splitting carries its multiplicity factor, stabilizer order,
and the bundle of parent-edge placements drawn as one case.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import InvalidInputError, ResourceLimitError
from .cohomology import kunneth_diagonal, kunneth_reorder_sign

INTERIOR = "interior"
RELATIVE = "relative"


@dataclass(frozen=True)
class Vertex:
    genus: int
    cls: tuple[int, ...]

    def __post_init__(self):
        if self.genus < 0:
            raise InvalidInputError(f"genus must be >= 0, got {self.genus}")


@dataclass(frozen=True)
class Leg:
    vertex: int
    marking: object
    kind: str = INTERIOR
    multiplicity: int | None = None

    def __post_init__(self):
        if self.kind not in (INTERIOR, RELATIVE):
            raise InvalidInputError(f"unknown leg kind {self.kind!r}")
        if self.kind == RELATIVE and (self.multiplicity is None or self.multiplicity < 1):
            raise InvalidInputError("relative legs need a positive multiplicity")


@dataclass(frozen=True)
class StableGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[int, int], ...]
    legs: tuple[Leg, ...]

    def __post_init__(self):
        nv = len(self.vertices)
        for a, b in self.edges:
            if not (0 <= a < nv and 0 <= b < nv):
                raise InvalidInputError(f"edge ({a},{b}) out of vertex range")
        for leg in self.legs:
            if not 0 <= leg.vertex < nv:
                raise InvalidInputError(f"leg {leg.marking} attached out of range")

    def valence(self, v: int) -> int:
        ends = sum((1 if a == v else 0) + (1 if b == v else 0) for a, b in self.edges)
        return ends + sum(1 for leg in self.legs if leg.vertex == v)

    def is_stable(self) -> bool:
        for i, vert in enumerate(self.vertices):
            if all(c == 0 for c in vert.cls):
                if 2 * vert.genus - 2 + self.valence(i) <= 0:
                    return False
        return True

    def relative_legs(self) -> tuple[Leg, ...]:
        return tuple(l for l in self.legs if l.kind == RELATIVE)

    def interior_legs(self) -> tuple[Leg, ...]:
        return tuple(l for l in self.legs if l.kind == INTERIOR)

    def components(self) -> list[set[int]]:
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, set[int]] = {}
        for v in range(len(self.vertices)):
            groups.setdefault(find(v), set()).add(v)
        return list(groups.values())

    def to_json(self):
        return {
            "vertices": [{"genus": v.genus, "class": list(v.cls)} for v in self.vertices],
            "edges": [[a, b] for a, b in self.edges],
            "legs": [
                {
                    "vertex": l.vertex,
                    "marking": l.marking,
                    "kind": l.kind,
                    **({"multiplicity": l.multiplicity} if l.multiplicity else {}),
                }
                for l in self.legs
            ],
        }


def graph_from_json(raw: dict) -> StableGraph:
    vertices = tuple(Vertex(int(v["genus"]), tuple(int(c) for c in v["class"])) for v in raw["vertices"])
    edges = tuple((int(a), int(b)) for a, b in raw.get("edges", []))
    legs = tuple(
        Leg(
            vertex=int(l["vertex"]),
            marking=l["marking"],
            kind=l.get("kind", INTERIOR),
            multiplicity=l.get("multiplicity"),
        )
        for l in raw.get("legs", [])
    )
    return StableGraph(vertices, edges, legs)


def _class_sum(classes):
    classes = list(classes)
    if not classes:
        raise InvalidInputError("cannot sum an empty class list")
    width = len(classes[0])
    acc = [0] * width
    for c in classes:
        if len(c) != width:
            raise InvalidInputError("curve classes live in different lattices")
        for i, x in enumerate(c):
            acc[i] += x
    return tuple(acc)


def contract_edges(graph: StableGraph) -> StableGraph:
    """Contract every edge: one vertex per component, genus summed plus the
    component's first Betti number, classes summed, legs preserved."""
    comps = graph.components()
    index_of = {}
    new_vertices = []
    for ci, comp in enumerate(sorted(comps, key=min)):
        edges_inside = sum(1 for a, b in graph.edges if a in comp)
        betti = edges_inside - len(comp) + 1
        genus = sum(graph.vertices[v].genus for v in comp) + betti
        cls = _class_sum(graph.vertices[v].cls for v in comp)
        for v in comp:
            index_of[v] = ci
        new_vertices.append(Vertex(genus, cls))
    new_legs = tuple(replace(l, vertex=index_of[l.vertex]) for l in graph.legs)
    return StableGraph(tuple(new_vertices), (), new_legs)


def contract_marked_edges(graph: StableGraph, marked: tuple[int, ...]) -> StableGraph:
    """Contract only the edges at the given indices, keeping the others.

    Used by the re-gluing check: the newly created gluing edges are
    contracted while the parent's own edges survive.
    """
    marked_set = set(marked)
    sub_edges = [graph.edges[i] for i in marked_set]
    parent = list(range(len(graph.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in sub_edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for v in range(len(graph.vertices)):
        groups.setdefault(find(v), []).append(v)
    comps = sorted(groups.values(), key=min)
    index_of = {}
    new_vertices = []
    for ci, comp in enumerate(comps):
        comp_set = set(comp)
        inside = sum(1 for a, b in sub_edges if a in comp_set and b in comp_set)
        betti = inside - len(comp) + 1
        genus = sum(graph.vertices[v].genus for v in comp) + betti
        cls = _class_sum(graph.vertices[v].cls for v in comp)
        for v in comp:
            index_of[v] = ci
        new_vertices.append(Vertex(genus, cls))
    kept_edges = tuple(
        (index_of[a], index_of[b])
        for i, (a, b) in enumerate(graph.edges)
        if i not in marked_set
    )
    new_legs = tuple(replace(l, vertex=index_of[l.vertex]) for l in graph.legs)
    return StableGraph(tuple(new_vertices), kept_edges, new_legs)


def graph_isomorphic(g1: StableGraph, g2: StableGraph) -> bool:
    """Brute-force isomorphism of decorated graphs with labeled legs."""
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return False
    if len(g1.legs) != len(g2.legs):
        return False

    def leg_key(l):
        return (l.marking, l.kind, l.multiplicity)

    legs2_by_key = {}
    for l in g2.legs:
        legs2_by_key.setdefault(leg_key(l), []).append(l.vertex)
    n = len(g1.vertices)
    for perm in itertools.permutations(range(n)):
        if any(
            g1.vertices[v].genus != g2.vertices[perm[v]].genus
            or g1.vertices[v].cls != g2.vertices[perm[v]].cls
            for v in range(n)
        ):
            continue
        mapped_edges = sorted(tuple(sorted((perm[a], perm[b]))) for a, b in g1.edges)
        target_edges = sorted(tuple(sorted(e)) for e in g2.edges)
        if mapped_edges != target_edges:
            continue
        ok = True
        for l in g1.legs:
            targets = legs2_by_key.get(leg_key(l), [])
            if perm[l.vertex] not in targets:
                ok = False
                break
        if ok:
            return True
    return False


# -- splitting enumeration ------------------------------------------------


@dataclass(frozen=True)
class SideVertexSpec:
    """One vertex of a splitting side: class plus its contact multiplicities."""

    cls: tuple[int, ...]
    contacts: tuple[int, ...]
    genus: int = 0


@dataclass(frozen=True)
class SplitOption:
    """One admissible class decomposition from the scenario's splitter."""

    side1: tuple[SideVertexSpec, ...]
    side2: tuple[SideVertexSpec, ...]


@dataclass(frozen=True)
class DegenerationScenario:
    """Scenario data for enumerating splittings of a one-vertex parent.

    options(parent_class) yields the admissible class decompositions with
    per-vertex contacts; push1/push2 send side classes to the parent's
    lattice; legs are pre-assigned to sides (marking -> 1 or 2).
    """

    name: str
    options: object  # callable: parent class -> iterable of SplitOption
    push1: object  # callable: side-1 class -> parent-lattice class
    push2: object
    leg_side: dict


@dataclass(frozen=True)
class Splitting:
    """A splitting case: ordered pair of relative graphs plus its bundle.

    `variants` lists the concrete (gamma1, gamma2) pairs bundled into the
    case (they differ only in where the parent's edges sit on one side);
    gamma1/gamma2 are the first variant.  ell, m, aut follow the matched
    relative legs, identical across the bundle.
    """

    gamma1: StableGraph
    gamma2: StableGraph
    variants: tuple[tuple[StableGraph, StableGraph], ...]
    ell: int
    m: int
    aut: int
    signature: str


def _relabel_relative(graph: StableGraph, perm: dict) -> StableGraph:
    legs = tuple(
        replace(l, marking=perm[l.marking]) if l.kind == RELATIVE else l
        for l in graph.legs
    )
    return StableGraph(graph.vertices, graph.edges, legs)


def _splitting_aut(gamma1: StableGraph, gamma2: StableGraph, ell: int) -> int:
    count = 0
    for perm_tuple in itertools.permutations(range(1, ell + 1)):
        perm = {i + 1: perm_tuple[i] for i in range(ell)}
        if graph_isomorphic(_relabel_relative(gamma1, perm), gamma1) and graph_isomorphic(
            _relabel_relative(gamma2, perm), gamma2
        ):
            count += 1
    return count


def _splittings_equivalent(a, b, ell: int) -> bool:
    ga1, ga2 = a
    gb1, gb2 = b
    for perm_tuple in itertools.permutations(range(1, ell + 1)):
        perm = {i + 1: perm_tuple[i] for i in range(ell)}
        if graph_isomorphic(_relabel_relative(ga1, perm), gb1) and graph_isomorphic(
            _relabel_relative(ga2, perm), gb2
        ):
            return True
    return False


def _push_graph(graph: StableGraph, push) -> StableGraph:
    vertices = tuple(Vertex(v.genus, tuple(push(v.cls))) for v in graph.vertices)
    return StableGraph(vertices, graph.edges, graph.legs)


def _reglue(gamma1: StableGraph, gamma2: StableGraph, scenario) -> StableGraph:
    """Glue matched relative legs into edges, then contract the new edges."""
    p1 = _push_graph(gamma1, scenario.push1)
    p2 = _push_graph(gamma2, scenario.push2)
    offset = len(p1.vertices)
    vertices = p1.vertices + p2.vertices
    edges = list(p1.edges) + [(a + offset, b + offset) for a, b in p2.edges]
    legs = []
    rel1 = {}
    rel2 = {}
    for l in p1.legs:
        if l.kind == RELATIVE:
            rel1[l.marking] = l.vertex
        else:
            legs.append(l)
    for l in p2.legs:
        if l.kind == RELATIVE:
            rel2[l.marking] = l.vertex + offset
        else:
            legs.append(replace(l, vertex=l.vertex + offset))
    if sorted(rel1) != sorted(rel2):
        raise InvalidInputError("relative legs of the two sides do not match up")
    new_edge_indices = []
    for label in sorted(rel1):
        new_edge_indices.append(len(edges))
        edges.append((rel1[label], rel2[label]))
    glued = StableGraph(tuple(vertices), tuple(edges), tuple(legs))
    return contract_marked_edges(glued, tuple(new_edge_indices))


def _side_graph(specs, side_markings, rel_assignment, extra_edges=()):
    """Build one side's graph: interior legs sit on the first vertex,
    relative legs follow the matching assignment, parent edges as given."""
    vertices = tuple(Vertex(s.genus, s.cls) for s in specs)
    legs = [Leg(vertex=0, marking=m) for m in side_markings]
    for label, (v, mult) in sorted(rel_assignment.items()):
        legs.append(Leg(vertex=v, marking=label, kind=RELATIVE, multiplicity=mult))
    return StableGraph(vertices, tuple(extra_edges), tuple(legs))


def _contact_slots(specs):
    """Flatten per-vertex contacts into (vertex, multiplicity) slots."""
    slots = []
    for v, spec in enumerate(specs):
        for mult in spec.contacts:
            slots.append((v, mult))
    return slots


def _edge_placements(n_vertices: int):
    """All ways one parent edge can sit on a side: loops and bridges."""
    placements = [("loop", (v,)) for v in range(n_vertices)]
    placements += [("bridge", pair) for pair in itertools.combinations(range(n_vertices), 2)]
    return placements


def enumerate_splittings(
    parent: StableGraph,
    scenario: DegenerationScenario,
    shape_bound: int = 2,
) -> list[Splitting]:
    """All splitting cases of a one-vertex parent, verified by re-gluing.

    The scenario's splitter bounds the admissible class decompositions;
    for each, matched relative legs are enumerated up to relabeling, and
    each parent edge is placed on either side as a loop or a bridge.
    Placements that differ only in the choice of vertex within one side
    are bundled into a single case, mirroring how such cases are counted
    in one factor list.  Every variant must re-glue to the parent.
    """
    if len(parent.vertices) != 1:
        raise InvalidInputError("splitting enumeration expects a one-vertex parent")
    parent_class = parent.vertices[0].cls
    markings1 = sorted(l.marking for l in parent.legs if scenario.leg_side[l.marking] == 1)
    markings2 = sorted(l.marking for l in parent.legs if scenario.leg_side[l.marking] == 2)

    results: list[Splitting] = []
    for opt in scenario.options(parent_class):
        if len(opt.side1) > shape_bound or len(opt.side2) > shape_bound:
            raise ResourceLimitError(
                f"split option exceeds shape bound {shape_bound}: {opt}"
            )
        slots1 = _contact_slots(opt.side1)
        slots2 = _contact_slots(opt.side2)
        if sorted(m for _, m in slots1) != sorted(m for _, m in slots2):
            raise InvalidInputError(
                f"contact multisets disagree between sides in option {opt}"
            )
        ell = len(slots1)
        m_factor = 1
        for _, mult in slots1:
            m_factor *= mult

        matchings = _distinct_matchings(opt, slots1, slots2, markings1, markings2, ell)
        for rel1, rel2 in matchings:
            for bundle in _placement_bundles(parent, opt, rel1, rel2, markings1, markings2, scenario):
                variants = tuple(bundle)
                g1, g2 = variants[0]
                aut = _splitting_aut(g1, g2, ell)
                results.append(
                    Splitting(
                        gamma1=g1,
                        gamma2=g2,
                        variants=variants,
                        ell=ell,
                        m=m_factor,
                        aut=aut,
                        signature=_signature(g1, g2, variants),
                    )
                )
    return results


def _distinct_matchings(opt, slots1, slots2, markings1, markings2, ell):
    """Mult-preserving bijections between contact slots, up to relabeling."""
    seen = []
    for perm in itertools.permutations(range(ell)):
        if any(slots1[i][1] != slots2[perm[i]][1] for i in range(ell)):
            continue
        rel1 = {i + 1: slots1[i] for i in range(ell)}
        rel2 = {i + 1: slots2[perm[i]] for i in range(ell)}
        g1 = _side_graph(opt.side1, markings1, rel1)
        g2 = _side_graph(opt.side2, markings2, rel2)
        if any(_splittings_equivalent((g1, g2), old, ell) for old, _, _ in seen):
            continue
        seen.append(((g1, g2), rel1, rel2))
    return [(rel1, rel2) for _, rel1, rel2 in seen]


def _placement_bundles(parent, opt, rel1, rel2, markings1, markings2, scenario):
    """Group valid parent-edge placements by (side, kind) into bundles."""
    parent_edges = parent.edges
    per_edge_choices = []
    for _ in parent_edges:
        choices = [(1, kind, where) for kind, where in _edge_placements(len(opt.side1))]
        choices += [(2, kind, where) for kind, where in _edge_placements(len(opt.side2))]
        per_edge_choices.append(choices)

    def build(assignment):
        extra1 = []
        extra2 = []
        for side, kind, where in assignment:
            edge = (where[0], where[0]) if kind == "loop" else (where[0], where[1])
            (extra1 if side == 1 else extra2).append(edge)
        g1 = _side_graph(opt.side1, markings1, rel1, tuple(extra1))
        g2 = _side_graph(opt.side2, markings2, rel2, tuple(extra2))
        return g1, g2

    bundles: dict[tuple, list] = {}
    for assignment in itertools.product(*per_edge_choices):
        g1, g2 = build(assignment)
        if not (g1.is_stable() and g2.is_stable()):
            continue
        reglued = _reglue(g1, g2, scenario)
        if not graph_isomorphic(reglued, parent):
            continue
        key = tuple((side, kind) for side, kind, _ in assignment)
        bundles.setdefault(key, []).append((g1, g2))
    if not parent_edges:
        # no edges to place: a single empty-assignment bundle
        g1, g2 = build(())
        if g1.is_stable() and g2.is_stable() and graph_isomorphic(_reglue(g1, g2, scenario), parent):
            return [[(g1, g2)]]
        return []
    return list(bundles.values())


def _signature(g1, g2, variants):
    def side_sig(g):
        classes = "+".join(str(v.cls) for v in sorted(g.vertices, key=lambda v: v.cls))
        loops = sum(1 for a, b in g.edges if a == b)
        bridges = sum(1 for a, b in g.edges if a != b)
        return f"{classes}|loops={loops}|bridges={bridges}"

    mults = ",".join(
        str(l.multiplicity) for l in sorted(g1.relative_legs(), key=lambda l: l.marking)
    )
    return f"side1[{side_sig(g1)}] side2[{side_sig(g2)}] rel({mults}) x{len(variants)}"


def degeneration_rhs(
    splittings,
    rel_oracle,
    ring_d,
    leg_degrees=None,
    leg_sides=None,
):
    """Assemble the degeneration sum from splittings and an invariant oracle.

    Each splitting contributes m/|Aut| times the dual-basis sum over the
    double locus: for every tuple of basis indices, side 1 is queried with
    the basis classes and side 2 with their duals, and the products are
    summed over the bundled variants.  The sign flips once per pair of
    odd interior classes that swap past each other in the side split.
    """
    pairs = kunneth_diagonal(ring_d)
    labels = [
        (ring_d.label_of(delta), ring_d.label_of(dual)) for delta, dual in pairs
    ]
    if leg_degrees is not None and leg_sides is not None:
        sign = kunneth_reorder_sign(leg_degrees, leg_sides)
    else:
        sign = 1
    total = Fraction(0)
    for s in splittings:
        contribution = Fraction(0)
        for g1, g2 in s.variants:
            for combo in itertools.product(range(len(pairs)), repeat=s.ell):
                side1_boundary = tuple(labels[j][0] for j in combo)
                side2_boundary = tuple(labels[j][1] for j in combo)
                v1 = rel_oracle(1, g1, side1_boundary)
                if not v1:
                    continue
                v2 = rel_oracle(2, g2, side2_boundary)
                contribution += sign * v1 * v2
        total += Fraction(s.m, s.aut) * contribution
    return total
