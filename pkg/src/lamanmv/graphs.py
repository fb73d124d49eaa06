"""Graphs, frameworks and the constructive machinery around minimal rigidity.

A graph on n vertices with 2n-3 edges is Laman when every k-subset of
vertices spans at most 2k-3 edges. The fast check is a (2,3)-pebble game;
the subset definition is kept as a brute-force oracle for cross checks.
Construction sequences (vertex additions of degree 2, or degree 3 with
one edge removal) are recovered by backtracking, and replaying them
yields the edge orientation with in-degree 2 everywhere outside the two
pinned base vertices.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import CapabilityError, InputError, InternalError, SequenceError

ORACLE_VERTEX_CAP = 12
ISO_VERTEX_CAP = 8
CATALOG_VERTEX_CAP = 6


def edge_key(a, b):
    if a == b:
        raise InputError(f"loop edge ({a},{a}) not allowed")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    @staticmethod
    def make(n, edges):
        if n < 1:
            raise InputError("vertex count must be positive")
        keys = set()
        for a, b in edges:
            if not (1 <= a <= n and 1 <= b <= n):
                raise InputError(f"edge ({a},{b}) out of range 1..{n}")
            k = edge_key(a, b)
            if k in keys:
                raise InputError(f"duplicate edge {k}")
            keys.add(k)
        return Graph(n=n, edges=frozenset(keys))

    def degree(self, v):
        return sum(1 for e in self.edges if v in e)

    def neighbors(self, v):
        return sorted(a if b == v else b for a, b in self.edges if v in (a, b))

    def sorted_edges(self):
        return sorted(self.edges)

    def relabel(self, mapping):
        """New graph under a vertex bijection old -> new."""
        return Graph.make(self.n, [(mapping[a], mapping[b]) for a, b in self.edges])


@dataclass(frozen=True)
class Framework:
    graph: Graph
    lengths: dict  # edge key -> positive Fraction

    @staticmethod
    def make(graph, lengths):
        norm = {}
        for (a, b), l in lengths.items():
            k = edge_key(a, b)
            if k not in graph.edges:
                raise InputError(f"length given for non-edge {k}")
            l = Fraction(l)
            if l <= 0:
                raise InputError(f"edge length for {k} must be positive")
            norm[k] = l
        missing = graph.edges - set(norm)
        if missing:
            raise InputError(f"missing lengths for edges {sorted(missing)}")
        return Framework(graph=graph, lengths=norm)

    def relabel(self, mapping):
        g = self.graph.relabel(mapping)
        lengths = {
            edge_key(mapping[a], mapping[b]): l for (a, b), l in self.lengths.items()
        }
        return Framework(graph=g, lengths=lengths)


@dataclass(frozen=True)
class StepI:
    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b:
            raise InputError("degree-2 addition needs two distinct anchors")


@dataclass(frozen=True)
class StepII:
    a: int
    b: int
    c: int
    removed: tuple

    def __post_init__(self):
        trio = {self.a, self.b, self.c}
        if len(trio) != 3:
            raise InputError("degree-3 addition needs three distinct anchors")
        r = edge_key(*self.removed)
        if not set(r) <= trio:
            raise InputError("removed edge must join two of the anchors")
        object.__setattr__(self, "removed", r)


@dataclass(frozen=True)
class HennebergSequence:
    """Base triangle on vertices 1,2,3; step t creates vertex t+3."""

    steps: tuple

    def final_vertex_count(self):
        return 3 + len(self.steps)

    def is_step1_only(self):
        return all(isinstance(s, StepI) for s in self.steps)


@dataclass(frozen=True)
class HennebergDecomposition:
    sequence: HennebergSequence
    relabeling: dict  # replay label -> original label

    def to_original(self, replay_label):
        return self.relabeling[replay_label]


@dataclass(frozen=True)
class Orientation:
    """Directions on all edges except the designated base edge."""

    base: tuple
    heads: dict  # edge key -> head vertex

    def in_degrees(self, graph):
        indeg = {v: 0 for v in range(1, graph.n + 1)}
        for _, head in self.heads.items():
            indeg[head] += 1
        return indeg

    def check(self, graph):
        base = edge_key(*self.base)
        if set(self.heads) != graph.edges - {base}:
            return False
        indeg = self.in_degrees(graph)
        for v in range(1, graph.n + 1):
            want = 0 if v in base else 2
            if indeg[v] != want:
                return False
        return True


# ---------------------------------------------------------------------------
# Laman checks


def check_laman(g):
    """(2,3)-pebble game; returns dict with 'laman' and optional 'witness'.

    The witness, when present, is a vertex subset spanning more than
    2k-3 edges (including the edge whose insertion failed).
    """
    if g.n < 2:
        return {"laman": False, "witness": None}
    pebbles = {v: 2 for v in range(1, g.n + 1)}
    out = {v: set() for v in range(1, g.n + 1)}

    def find_pebble(root, forbidden):
        """Directed path from root to a vertex with a free pebble."""
        stack = [root]
        parent = {root: None}
        while stack:
            x = stack.pop()
            for y in sorted(out[x]):
                if y in parent:
                    continue
                parent[y] = x
                if y not in forbidden and pebbles[y] > 0:
                    path = [y]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                stack.append(y)
        return None

    def reachable(u, v):
        seen = {u, v}
        stack = [u, v]
        while stack:
            x = stack.pop()
            for y in out[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    for u, v in sorted(g.edges):
        while pebbles[u] + pebbles[v] < 4:
            moved = False
            for root in (u, v):
                path = find_pebble(root, {u, v})
                if path is not None:
                    for x, y in zip(path, path[1:]):
                        out[x].discard(y)
                        out[y].add(x)
                    pebbles[path[-1]] -= 1
                    pebbles[root] += 1
                    moved = True
                    break
            if not moved:
                # The reachable closure spans too many edges once (u, v)
                # is counted, so it violates the subset condition.
                return {"laman": False, "witness": sorted(reachable(u, v))}
        payer, other = (u, v) if pebbles[u] > 0 else (v, u)
        pebbles[payer] -= 1
        out[payer].add(other)
    return {"laman": len(g.edges) == 2 * g.n - 3, "witness": None}


def laman_oracle(g):
    """Exhaustive subset check of the Laman counts (n <= 12)."""
    if g.n > ORACLE_VERTEX_CAP:
        raise CapabilityError(f"subset oracle capped at {ORACLE_VERTEX_CAP} vertices")
    if g.n < 2 or len(g.edges) != 2 * g.n - 3:
        return False
    vertices = range(1, g.n + 1)
    for k in range(2, g.n + 1):
        for subset in itertools.combinations(vertices, k):
            sub = set(subset)
            spanned = sum(1 for a, b in g.edges if a in sub and b in sub)
            if spanned > 2 * k - 3:
                return False
    return True


# ---------------------------------------------------------------------------
# Henneberg construction and decomposition


def triangle():
    return Graph.make(3, [(1, 2), (1, 3), (2, 3)])


def henneberg_apply(seq):
    """Replay a construction sequence from the base triangle."""
    g = triangle()
    edges = set(g.edges)
    n = 3
    for idx, step in enumerate(seq.steps):
        new = n + 1
        if isinstance(step, StepI):
            for v in (step.a, step.b):
                if not (1 <= v <= n):
                    raise SequenceError(f"step {idx + 1} references missing vertex {v}")
            edges.add(edge_key(step.a, new))
            edges.add(edge_key(step.b, new))
        elif isinstance(step, StepII):
            for v in (step.a, step.b, step.c):
                if not (1 <= v <= n):
                    raise SequenceError(f"step {idx + 1} references missing vertex {v}")
            if step.removed not in edges:
                raise SequenceError(
                    f"step {idx + 1} removes non-existent edge {step.removed}"
                )
            edges.remove(step.removed)
            for v in (step.a, step.b, step.c):
                edges.add(edge_key(v, new))
        else:
            raise SequenceError(f"unknown step type {type(step).__name__}")
        n = new
    return Graph.make(n, edges)


def _degree_map(edges, vertices):
    deg = {v: 0 for v in vertices}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    return deg


def _edges_laman(edges, vertices):
    mapping = {v: i + 1 for i, v in enumerate(sorted(vertices))}
    g = Graph.make(len(vertices), [(mapping[a], mapping[b]) for a, b in edges])
    return check_laman(g)["laman"]


def _peel_search(edges, vertices, keep, only_step1, _failed=None):
    """Backtracking reverse construction down to a triangle.

    Returns a list of peel records (kind, vertex, anchors, inserted) in
    peel order, or None. keep lists vertices that must survive.
    """
    if _failed is None:
        _failed = set()
    key = frozenset(edges)
    if key in _failed:
        return None
    if len(vertices) == 3:
        return []
    deg = _degree_map(edges, vertices)
    candidates = sorted(v for v in vertices if v not in keep and deg[v] in (2, 3))
    for v in sorted(candidates, key=lambda v: (deg[v], v)):
        nbrs = sorted(a if b == v else b for a, b in edges if v in (a, b))
        stripped = {e for e in edges if v not in e}
        rest = vertices - {v}
        if deg[v] == 2:
            # Removing a degree-2 vertex of a Laman graph keeps it Laman.
            sub = _peel_search(stripped, rest, keep, only_step1, _failed)
            if sub is not None:
                return [("I", v, tuple(nbrs), None)] + sub
        elif deg[v] == 3 and not only_step1:
            for x, y in itertools.combinations(nbrs, 2):
                ins = edge_key(x, y)
                if ins in stripped:
                    continue
                cand = stripped | {ins}
                if not _edges_laman(cand, rest):
                    continue
                sub = _peel_search(cand, rest, keep, only_step1, _failed)
                if sub is not None:
                    return [("II", v, tuple(nbrs), ins)] + sub
    _failed.add(key)
    return None


def henneberg_decompose(g, keep=frozenset(), only_step1=False):
    """Construction sequence plus explicit relabeling for a Laman graph.

    Replaying the returned sequence gives a graph isomorphic to g; the
    relabeling maps replay labels to the original ones. Vertices in keep
    are never peeled and end up in the base triangle.
    """
    if not check_laman(g)["laman"]:
        raise InputError("graph is not Laman")
    vertices = set(range(1, g.n + 1))
    peels = _peel_search(set(g.edges), vertices, frozenset(keep), only_step1)
    if peels is None:
        raise InputError(
            "no construction sequence found"
            + (" with only degree-2 additions" if only_step1 else "")
        )
    surviving = vertices - {p[1] for p in peels}
    orig_to_replay = {}
    ordered = sorted(keep) + sorted(surviving - set(keep))
    for i, v in enumerate(ordered):
        orig_to_replay[v] = i + 1
    steps = []
    label = 3
    for kind, v, anchors, inserted in reversed(peels):
        label += 1
        orig_to_replay[v] = label
        if kind == "I":
            a, b = (orig_to_replay[x] for x in anchors)
            steps.append(StepI(a, b))
        else:
            a, b, c = (orig_to_replay[x] for x in anchors)
            rx, ry = (orig_to_replay[x] for x in inserted)
            steps.append(StepII(a, b, c, removed=edge_key(rx, ry)))
    relabeling = {r: o for o, r in orig_to_replay.items()}
    return HennebergDecomposition(HennebergSequence(tuple(steps)), relabeling)


HENNEBERG_I = "HennebergI"
HENNEBERG_II = "HennebergII"


def classify(g):
    """HennebergI iff some all-degree-2 peel order reaches the triangle."""
    if not check_laman(g)["laman"]:
        raise InputError("graph is not Laman")

    failed = set()

    def peelable(edges, vertices):
        if len(vertices) == 3:
            return True
        key = frozenset(edges)
        if key in failed:
            return False
        deg = _degree_map(edges, vertices)
        for v in sorted(vertices):
            if deg[v] == 2:
                stripped = frozenset(e for e in edges if v not in e)
                if peelable(stripped, vertices - {v}):
                    return True
        failed.add(key)
        return False

    if peelable(frozenset(g.edges), set(range(1, g.n + 1))):
        return HENNEBERG_I
    return HENNEBERG_II


# ---------------------------------------------------------------------------
# Orientation with two incoming edges per non-pinned vertex


def relabel_with_base(g, base):
    """Relabel so the base edge becomes (1, 2); returns (graph, old->new)."""
    base = edge_key(*base)
    if base not in g.edges:
        raise InputError(f"base {base} is not an edge")
    u, v = base
    mapping = {u: 1, v: 2}
    nxt = 3
    for w in range(1, g.n + 1):
        if w not in mapping:
            mapping[w] = nxt
            nxt += 1
    return g.relabel(mapping), mapping


def orient_two_in(g, base):
    """Edge directions with in-degree 2 off the base, 0 on its endpoints.

    Built by replaying a construction sequence that keeps the base edge
    pinned: new edges point at the new vertex, except that a degree-3
    addition redirects one edge at the deleted edge's former head.
    """
    base = edge_key(*base)
    if base not in g.edges:
        raise InputError(f"base {base} is not an edge")
    if not check_laman(g)["laman"]:
        raise InputError("graph is not Laman")
    work, old_to_new = relabel_with_base(g, base)
    dec = henneberg_decompose(work, keep=frozenset({1, 2}))
    heads = {edge_key(1, 3): 3, edge_key(2, 3): 3}
    n = 3
    for step in dec.sequence.steps:
        new = n + 1
        if isinstance(step, StepI):
            heads[edge_key(step.a, new)] = new
            heads[edge_key(step.b, new)] = new
        else:
            old_head = heads.pop(step.removed)
            r, s = step.removed
            tail = r if old_head == s else s
            third = ({step.a, step.b, step.c} - {r, s}).pop()
            heads[edge_key(new, old_head)] = old_head
            heads[edge_key(new, tail)] = new
            heads[edge_key(new, third)] = new
        n = new
    # Map replay labels back through the decomposition and the relabeling.
    new_to_old = {v: k for k, v in old_to_new.items()}

    def back(replay_label):
        return new_to_old[dec.to_original(replay_label)]

    out_heads = {}
    for (a, b), h in heads.items():
        out_heads[edge_key(back(a), back(b))] = back(h)
    orientation = Orientation(base=base, heads=out_heads)
    if not orientation.check(g):
        raise InternalError("orientation invariant violated")
    return orientation


# ---------------------------------------------------------------------------
# Isomorphism, catalogs, random construction


def canonical_form(g):
    """Minimum edge tuple over degree-preserving relabelings (n <= 8)."""
    if g.n > ISO_VERTEX_CAP:
        raise CapabilityError(f"canonical form capped at {ISO_VERTEX_CAP} vertices")
    degs = {v: g.degree(v) for v in range(1, g.n + 1)}
    classes = {}
    for v, d in degs.items():
        classes.setdefault(d, []).append(v)
    blocks = []
    start = 1
    for _, vs in sorted(classes.items()):
        vs = sorted(vs)
        blocks.append((vs, list(range(start, start + len(vs)))))
        start += len(vs)
    best = None
    for perms in itertools.product(*(itertools.permutations(vs) for vs, _ in blocks)):
        mapping = {}
        for (_, targets), perm in zip(blocks, perms):
            for v, t in zip(perm, targets):
                mapping[v] = t
        form = tuple(sorted(edge_key(mapping[a], mapping[b]) for a, b in g.edges))
        if best is None or form < best:
            best = form
    return best


def is_isomorphic(g, h):
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    return canonical_form(g) == canonical_form(h)


@lru_cache(maxsize=None)
def all_laman_graphs(n):
    """All Laman graphs on n vertices up to isomorphism (n <= 6)."""
    if n > CATALOG_VERTEX_CAP:
        raise CapabilityError(f"catalog capped at {CATALOG_VERTEX_CAP} vertices")
    if n < 3:
        return ()
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    target = 2 * n - 3
    seen = set()
    result = []
    for subset in itertools.combinations(pairs, target):
        deg = {v: 0 for v in range(1, n + 1)}
        for a, b in subset:
            deg[a] += 1
            deg[b] += 1
        if any(d < 2 for d in deg.values()):
            continue
        g = Graph.make(n, subset)
        if not check_laman(g)["laman"]:
            continue
        form = canonical_form(g)
        if form in seen:
            continue
        seen.add(form)
        result.append(g)
    return tuple(result)


def desargues_graph():
    """Triangular prism: two triangles joined by a perfect matching."""
    return Graph.make(
        6, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (1, 4), (2, 5), (3, 6)]
    )


def k33_graph():
    """Complete bipartite graph on parts {1,3,5} and {2,4,6}."""
    return Graph.make(6, [(a, b) for a in (1, 3, 5) for b in (2, 4, 6)])


def random_henneberg_sequence(n, seed, step2_probability=0.0):
    """Seeded random construction sequence reaching n vertices."""
    if n < 3:
        raise InputError("need at least three vertices")
    rng = random.Random(seed)
    steps = []
    g = triangle()
    for new in range(4, n + 1):
        existing = list(range(1, new))
        use_step2 = new >= 5 and rng.random() < step2_probability
        if use_step2:
            r, s = rng.choice(sorted(g.edges))
            c = rng.choice([v for v in existing if v not in (r, s)])
            step = StepII(r, s, c, removed=(r, s))
        else:
            a, b = rng.sample(existing, 2)
            step = StepI(a, b)
        steps.append(step)
        g = henneberg_apply(HennebergSequence(tuple(steps)))
    return HennebergSequence(tuple(steps))
