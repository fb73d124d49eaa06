"""Real planar realizations of degree-2 construction sequences.

Every vertex added with two edges sits on the intersection of two
circles, so a framework built purely from such steps has at most two
choices per vertex and all embeddings are enumerated by a depth-first
product over those choices. Reflections across the pinned axis count as
distinct embeddings (the pinning kills translations and rotations only),
which is why the triangle has exactly two.

Edge lengths from tight_lengths make every intersection real and
transversal, so the 2^(n-2) bound is attained.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateInputError, InputError
from .graphs import Framework, edge_key, henneberg_apply

TANGENCY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Embedding:
    points: dict  # vertex -> (x, y) floats
    residual: float
    choices: tuple  # +1/-1 per circle intersection, 0 at a tangency
    tangent: bool = False


def tight_lengths(seq):
    """Edge lengths realizing the full embedding count.

    Base triangle (3, 4, 5); every step's two new lengths exceed the sum
    of everything assigned before, so both circle intersections exist on
    every branch.
    """
    if not seq.is_step1_only():
        raise InputError("tight lengths are defined for degree-2 steps only")
    g = henneberg_apply(seq)
    lengths = {
        edge_key(1, 2): Fraction(3),
        edge_key(1, 3): Fraction(4),
        edge_key(2, 3): Fraction(5),
    }
    new_vertex = 3
    for step in seq.steps:
        new_vertex += 1
        total = sum(lengths.values())
        a, b = sorted((step.a, step.b))
        lengths[edge_key(a, new_vertex)] = total + 1
        lengths[edge_key(b, new_vertex)] = total + 2
    return Framework.make(g, lengths)


def _circle_intersections(c1, r1, c2, r2):
    """Intersection points of two circles with a tangency flag.

    Returns (points, tangent). Coincident centers with equal radii are
    degenerate input; empty intersections give no points.
    """
    c1 = np.asarray(c1, dtype=float)
    c2 = np.asarray(c2, dtype=float)
    delta = c2 - c1
    d2 = float(delta @ delta)
    if d2 == 0.0:
        if abs(r1 - r2) <= TANGENCY_TOLERANCE:
            raise DegenerateInputError("coincident circles: infinitely many points")
        return [], False
    d = math.sqrt(d2)
    along = (r1 * r1 - r2 * r2 + d2) / (2 * d)
    h2 = r1 * r1 - along * along
    scale = max(r1 * r1, r2 * r2, d2)
    if h2 < -TANGENCY_TOLERANCE * scale:
        return [], False
    base = c1 + (along / d) * delta
    if h2 <= TANGENCY_TOLERANCE * scale:
        return [(base, 0)], True
    h = math.sqrt(h2)
    normal = np.array([-delta[1], delta[0]]) / d
    return [(base + h * normal, +1), (base - h * normal, -1)], False


def enumerate_h1(framework, seq):
    """All embeddings of a degree-2-step framework, depth first.

    The first two vertices are pinned at (0,0) and (l12, 0); the apex and
    every added vertex contribute at most two intersection points each.
    Output is canonically ordered by the sign vector of the choices.
    """
    if not seq.is_step1_only():
        raise InputError("enumeration needs a degree-2-only sequence")
    g = henneberg_apply(seq)
    if g.edges != framework.graph.edges or g.n != framework.graph.n:
        raise InputError("framework does not match the sequence's graph")
    lengths = {e: float(l) for e, l in framework.lengths.items()}
    l12 = lengths[edge_key(1, 2)]
    anchors = [(1, 2, 3)] + [(s.a, s.b, 4 + i) for i, s in enumerate(seq.steps)]

    results = []

    def place(pos, idx, choices, tangent_seen):
        if idx == len(anchors):
            results.append((dict(pos), tuple(choices), tangent_seen))
            return
        a, b, v = anchors[idx]
        pts, tangent = _circle_intersections(
            pos[a], lengths[edge_key(a, v)], pos[b], lengths[edge_key(b, v)]
        )
        for pt, sign in pts:
            pos[v] = (float(pt[0]), float(pt[1]))
            choices.append(sign)
            place(pos, idx + 1, choices, tangent_seen or tangent)
            choices.pop()
            del pos[v]

    place({1: (0.0, 0.0), 2: (l12, 0.0)}, 0, [], False)

    out = []
    for pos, choices, tangent in sorted(results, key=lambda r: r[1]):
        residual = _max_relative_error(framework, pos)
        out.append(
            Embedding(points=pos, residual=residual, choices=choices, tangent=tangent)
        )
    return out


def _max_relative_error(framework, pos):
    worst = 0.0
    for (i, j), l in framework.lengths.items():
        dx = pos[i][0] - pos[j][0]
        dy = pos[i][1] - pos[j][1]
        err = abs(math.hypot(dx, dy) - float(l)) / float(l)
        worst = max(worst, err)
    return worst


def verify_embedding(framework, embedding, tol=Fraction(1, 10**9)):
    """True iff every edge length is met within relative tolerance."""
    for (i, j), l in framework.lengths.items():
        if i not in embedding.points or j not in embedding.points:
            return False
        dx = embedding.points[i][0] - embedding.points[j][0]
        dy = embedding.points[i][1] - embedding.points[j][1]
        if abs(math.hypot(dx, dy) - float(l)) / float(l) > float(tol):
            return False
    return True


def reflect(embedding):
    """Mirror image across the pinned axis."""
    pts = {v: (x, -y) for v, (x, y) in embedding.points.items()}
    return Embedding(
        points=pts,
        residual=embedding.residual,
        choices=tuple(-c for c in embedding.choices),
        tangent=embedding.tangent,
    )
