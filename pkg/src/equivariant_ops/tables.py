"""Class and degree-vector censuses, with human-readable names for small graphs."""

from __future__ import annotations

from .multigraph import (
    NULL_GRAPH,
    DegreeVector,
    Multigraph,
    canonical_form,
    cycle_notation,
    degree_vector,
    degree_vectors,
    enumerate_classes,
    orbits,
    symmetry_generators,
)

# (name, flat operator, graph) for every connected class with at most 3 edges
_CONNECTED = [
    ("empty graph", "1", NULL_GRAPH),
    ("isolated vertex", "f", Multigraph(1)),
    ("single edge", "|grad f|^2", Multigraph(2, ((0, 1),))),
    ("single loop", "lap f", Multigraph(1, ((0, 0),))),
    ("path of length two", "hess f(grad f, grad f)", Multigraph(3, ((0, 1), (1, 2)))),
    ("double edge", "|hess f|^2", Multigraph(2, ((0, 1), (0, 1)))),
    ("loop and edge", "<grad lap f, grad f>", Multigraph(2, ((0, 1), (1, 1)))),
    ("double loop", "lap^2 f", Multigraph(1, ((0, 0), (0, 0)))),
    ("path of length three", "|hess f(grad f, .)|^2", Multigraph(4, ((0, 1), (1, 2), (2, 3)))),
    ("star", "D^3 f(grad f, grad f, grad f)", Multigraph(4, ((0, 1), (0, 2), (0, 3)))),
    ("triangle", "tr (hess f)^3", Multigraph(3, ((0, 1), (1, 2), (0, 2)))),
    ("path of length two with a double edge", "<D^3 f, grad f (x) hess f>", Multigraph(3, ((0, 1), (0, 1), (1, 2)))),
    ("path of length two and one loop on the side", "hess f(grad lap f, grad f)", Multigraph(3, ((0, 1), (1, 2), (2, 2)))),
    ("path of length two and loop in the middle", "hess lap f(grad f, grad f)", Multigraph(3, ((0, 1), (1, 2), (1, 1)))),
    ("triple edge", "|D^3 f|^2", Multigraph(2, ((0, 1), (0, 1), (0, 1)))),
    ("double edge with a loop", "<hess lap f, hess f>", Multigraph(2, ((0, 1), (0, 1), (1, 1)))),
    ("one edge and one loop per side", "|grad lap f|^2", Multigraph(2, ((0, 1), (0, 0), (1, 1)))),
    ("edge and two loops on the same side", "<grad lap^2 f, grad f>", Multigraph(2, ((0, 1), (1, 1), (1, 1)))),
    ("triple loop", "lap^3 f", Multigraph(1, ((0, 0), (0, 0), (0, 0)))),
]

_NAMES = {canonical_form(g): (name, op) for name, op, g in _CONNECTED}
_RANK = {canonical_form(g): k for k, (_, _, g) in enumerate(_CONNECTED)}


def graph_name(graph: Multigraph) -> str:
    """Curated name for small classes; disjoint unions join component names with ``+``."""
    key = canonical_form(graph)
    if key in _NAMES:
        return _NAMES[key][0]
    parts = graph.components()
    if len(parts) > 1:
        named = sorted(parts, key=lambda g: _RANK.get(canonical_form(g), len(_RANK)))
        return " + ".join(graph_name(g) for g in named)
    return "edges " + " ".join(f"{i}-{j}" for i, j in key.edges)


def flat_operator(graph: Multigraph) -> str:
    key = canonical_form(graph)
    if key in _NAMES:
        return _NAMES[key][1]
    parts = graph.components()
    if len(parts) > 1 and all(canonical_form(g) in _NAMES for g in parts):
        return " * ".join(f"({flat_operator(g)})" for g in parts)
    return ""


def grading(graph: Multigraph) -> tuple[int, int, int]:
    """(order, total order, polynomial degree) = (max degree, 2 * edges, vertices)."""
    return graph.max_degree(), 2 * graph.num_edges, graph.n


def class_row(graph: Multigraph) -> dict:
    order, total, poly = grading(graph)
    return {
        "name": graph_name(graph),
        "graph": graph.to_json(),
        "beta": degree_vector(graph).to_json(),
        "vertices": graph.n,
        "edges": graph.num_edges,
        "connected": graph.is_connected(),
        "order": order,
        "total_order": total,
        "polynomial_degree": poly,
        "operator": flat_operator(graph),
    }


def table1(max_edges: int = 3) -> list[dict]:
    """Connected classes with up to ``max_edges`` edges, in census order."""
    rows = []
    for p in range(max_edges + 1):
        graphs = enumerate_classes(p, connected_only=True)
        graphs.sort(key=lambda g: (_RANK.get(canonical_form(g), len(_RANK)), g))
        rows.extend(class_row(g) for g in graphs)
    return rows


def table3(p: int = 3) -> list[dict]:
    """Degree vectors with ``p`` edges: orbit counts, representatives and group orders."""
    rows = []
    for beta in degree_vectors(p):
        group = symmetry_generators(beta)
        orbs = orbits(beta)
        rows.append({
            "beta": beta.to_json(),
            "vertices": beta.num_vertices,
            "orbits": len(orbs),
            "representatives": [graph_name(o.graph) for o in orbs],
            "orbit_sizes": [len(o) for o in orbs],
            "group_order": group.order(),
            "generators": [cycle_notation(g) for g in group.generators],
        })
    return rows


def beta_label(beta: dict | DegreeVector) -> str:
    if isinstance(beta, dict):
        beta = DegreeVector.from_json(beta)
    return str(beta)
