"""Sparse polynomial systems encoding edge-length constraints.

Two systems per framework: the plain distance system ("soe", 2n quadratic
and pinning equations over x1,y1,..,xn,yn) and the substituted system
("subsoe", 3n equations with one extra variable per vertex replacing the
squared norm x_i^2 + y_i^2). Pinning fixes vertex 1 at (c1, c2), the x
coordinate of vertex 2 at l12 - c1 and its y coordinate at c3, which
removes rigid motions. All coefficients are rational and evaluation is
exact over Gaussian rationals.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import polytopes
from .errors import InputError
from .graphs import edge_key, orient_two_in, relabel_with_base

FORM_SOE = "soe"
FORM_SUBSOE = "subsoe"
FORM_FACE = "face"
FORM_CUSTOM = "custom"


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction
    im: Fraction = Fraction(0)

    @staticmethod
    def of(re, im=0):
        return GaussianRational(Fraction(re), Fraction(im))

    def __add__(self, other):
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0


GR_ZERO = GaussianRational.of(0)
GR_ONE = GaussianRational.of(1)
GR_I = GaussianRational.of(0, 1)


@dataclass(frozen=True)
class Constants:
    """Pinning constants; nonzero, with c1 distinct from the base length."""

    c1: Fraction = Fraction(1)
    c2: Fraction = Fraction(2)
    c3: Fraction = Fraction(3)

    @staticmethod
    def default():
        return Constants()

    @staticmethod
    def generic_for(l12):
        """Default constants, with c1 bumped when it equals the base length."""
        c = Constants()
        if c.c1 == Fraction(l12):
            c = Constants(c1=Fraction(l12) + 1, c2=c.c2, c3=c.c3)
        return c

    def validate(self, l12):
        for name, c in (("c1", self.c1), ("c2", self.c2), ("c3", self.c3)):
            if c == 0:
                raise InputError(f"constant {name} must be nonzero")
        if self.c1 == l12:
            raise InputError("c1 must differ from the base edge length")


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial: exponent tuple -> nonzero rational coefficient."""

    nvars: int
    terms: tuple  # sorted tuple of (exponent tuple, Fraction)

    @staticmethod
    def make(nvars, coeffs):
        terms = {}
        for expo, c in coeffs.items():
            c = Fraction(c)
            if len(expo) != nvars:
                raise InputError("exponent length mismatch")
            if any(e < 0 for e in expo):
                raise InputError("negative exponent")
            if c != 0:
                terms[tuple(int(e) for e in expo)] = terms.get(tuple(expo), Fraction(0)) + c
        cleaned = tuple(sorted((e, c) for e, c in terms.items() if c != 0))
        return Polynomial(nvars=nvars, terms=cleaned)

    def support(self):
        return [e for e, _ in self.terms]

    def total_degree(self):
        return max((sum(e) for e, _ in self.terms), default=0)

    def coefficient(self, expo):
        for e, c in self.terms:
            if e == tuple(expo):
                return c
        return Fraction(0)

    def evaluate(self, point):
        """Exact value at a Gaussian rational point."""
        if len(point) != self.nvars:
            raise InputError("point length mismatch")
        total = GR_ZERO
        for expo, coeff in self.terms:
            val = GaussianRational.of(coeff)
            for x, e in zip(point, expo):
                for _ in range(e):
                    val = val * x
            total = total + val
        return total

    def face(self, w):
        """Terms minimal under direction w (the w-face subpolynomial)."""
        if all(x == 0 for x in w):
            raise InputError("face direction must be nonzero")
        vals = [
            sum((Fraction(wc) * e for wc, e in zip(w, expo)), Fraction(0))
            for expo, _ in self.terms
        ]
        lo = min(vals)
        kept = {e: c for (e, c), v in zip(self.terms, vals) if v == lo}
        return Polynomial.make(self.nvars, kept)


@dataclass(frozen=True)
class PolySystem:
    variables: tuple  # ordered variable names
    polys: tuple
    form: str = FORM_CUSTOM

    def __post_init__(self):
        for p in self.polys:
            if p.nvars != len(self.variables):
                raise InputError("polynomial/variable arity mismatch")

    @property
    def nvars(self):
        return len(self.variables)


def _soe_variables(n):
    names = []
    for i in range(1, n + 1):
        names.extend((f"x{i}", f"y{i}"))
    return tuple(names)


def _expo(nvars, pairs):
    e = [0] * nvars
    for idx, p in pairs:
        e[idx] += p
    return tuple(e)


def _pinning_polys(nvars, x1, y1, x2, y2, consts, l12):
    mk = Polynomial.make
    return [
        mk(nvars, {_expo(nvars, [(x1, 1)]): 1, _expo(nvars, []): -consts.c1}),
        mk(nvars, {_expo(nvars, [(y1, 1)]): 1, _expo(nvars, []): -consts.c2}),
        mk(nvars, {_expo(nvars, [(x2, 1)]): 1, _expo(nvars, []): -(l12 - consts.c1)}),
        mk(nvars, {_expo(nvars, [(y2, 1)]): 1, _expo(nvars, []): -consts.c3}),
    ]


def _require_base_edge(framework):
    base = edge_key(1, 2)
    if base not in framework.graph.edges:
        raise InputError("framework must carry the base edge (1,2); relabel first")
    return framework.lengths[base]


def build_soe(framework, consts=None):
    """Distance system: four pinning equations, one quadratic per edge.

    Quadratics are ordered by the two-incoming-edges orientation, so the
    equations at positions 2i-1, 2i (1-based) are the in-edges of vertex
    i for every i >= 3. That ordering is what the volume certificate
    consumes.
    """
    l12 = _require_base_edge(framework)
    if consts is None:
        consts = Constants.generic_for(l12)
    consts.validate(l12)
    g = framework.graph
    n = g.n
    nvars = 2 * n
    xs = {i: 2 * (i - 1) for i in range(1, n + 1)}
    ys = {i: 2 * (i - 1) + 1 for i in range(1, n + 1)}
    polys = _pinning_polys(nvars, xs[1], ys[1], xs[2], ys[2], consts, l12)
    orient = orient_two_in(g, (1, 2))
    in_edges = {v: [] for v in range(3, n + 1)}
    for e, head in orient.heads.items():
        in_edges[head].append(e)
    mk = Polynomial.make
    for v in range(3, n + 1):
        pair = sorted(in_edges[v])
        if len(pair) != 2:
            raise InputError("orientation must give exactly two in-edges")
        for i, j in pair:
            l = framework.lengths[edge_key(i, j)]
            polys.append(
                mk(
                    nvars,
                    {
                        _expo(nvars, [(xs[i], 2)]): 1,
                        _expo(nvars, [(xs[j], 2)]): 1,
                        _expo(nvars, [(xs[i], 1), (xs[j], 1)]): -2,
                        _expo(nvars, [(ys[i], 2)]): 1,
                        _expo(nvars, [(ys[j], 2)]): 1,
                        _expo(nvars, [(ys[i], 1), (ys[j], 1)]): -2,
                        _expo(nvars, []): -(l * l),
                    },
                )
            )
    return PolySystem(_soe_variables(n), tuple(polys), form=FORM_SOE)


def build_subsoe(framework, consts=None):
    """Substituted system: pinning, edge equations in s_i, circle equations."""
    l12 = _require_base_edge(framework)
    if consts is None:
        consts = Constants.generic_for(l12)
    consts.validate(l12)
    g = framework.graph
    n = g.n
    nvars = 3 * n
    xs = {i: 2 * (i - 1) for i in range(1, n + 1)}
    ys = {i: 2 * (i - 1) + 1 for i in range(1, n + 1)}
    ss = {i: 2 * n + (i - 1) for i in range(1, n + 1)}
    polys = _pinning_polys(nvars, xs[1], ys[1], xs[2], ys[2], consts, l12)
    mk = Polynomial.make
    for i, j in sorted(g.edges - {edge_key(1, 2)}):
        l = framework.lengths[edge_key(i, j)]
        polys.append(
            mk(
                nvars,
                {
                    _expo(nvars, [(ss[i], 1)]): 1,
                    _expo(nvars, [(ss[j], 1)]): 1,
                    _expo(nvars, [(xs[i], 1), (xs[j], 1)]): -2,
                    _expo(nvars, [(ys[i], 1), (ys[j], 1)]): -2,
                    _expo(nvars, []): -(l * l),
                },
            )
        )
    for i in range(1, n + 1):
        polys.append(
            mk(
                nvars,
                {
                    _expo(nvars, [(ss[i], 1)]): 1,
                    _expo(nvars, [(xs[i], 2)]): -1,
                    _expo(nvars, [(ys[i], 2)]): -1,
                },
            )
        )
    variables = _soe_variables(n) + tuple(f"s{i}" for i in range(1, n + 1))
    return PolySystem(variables, tuple(polys), form=FORM_SUBSOE)


def newton_polytopes(system):
    """Vertex-form Newton polytope of every polynomial, in system order."""
    out = []
    for p in system.polys:
        support = p.support()
        if not support:
            raise InputError("zero polynomial has no Newton polytope")
        out.append(polytopes.hull_vertices(support))
    return out


def face_system(system, w):
    """Restrict every polynomial to its w-minimal face."""
    if len(w) != system.nvars:
        raise InputError("direction length mismatch")
    if all(x == 0 for x in w):
        raise InputError("face direction must be nonzero")
    w = tuple(Fraction(x) for x in w)
    return PolySystem(
        system.variables, tuple(p.face(w) for p in system.polys), form=FORM_FACE
    )


def evaluate(system, point):
    """Exact values of all polynomials at a Gaussian rational point."""
    return tuple(p.evaluate(point) for p in system.polys)


def bezout(system):
    """Product of the total degrees."""
    out = 1
    for p in system.polys:
        out *= p.total_degree()
    return out


def degeneracy_direction(n):
    """Direction that keeps pinning terms and drops edge constants."""
    return tuple([Fraction(0)] * 4 + [Fraction(-1)] * (2 * n - 4))


def degeneracy_witness_point(n, consts, l12):
    """The pinned coordinates followed by (1, i) for every free vertex."""
    pt = [
        GaussianRational.of(consts.c1),
        GaussianRational.of(consts.c2),
        GaussianRational.of(l12 - consts.c1),
        GaussianRational.of(consts.c3),
    ]
    for _ in range(n - 2):
        pt.extend((GR_ONE, GR_I))
    return tuple(pt)


def witness_check(framework, consts=None):
    """Certify that the distance system is degenerate for face counting.

    Builds the face system along (0,0,0,0,-1,..,-1) and evaluates it at
    the explicit point with nonzero complex entries; returns True iff
    every equation vanishes exactly, which makes the mixed volume a
    strict upper bound on the embedding count.
    """
    fw = framework
    if edge_key(1, 2) not in fw.graph.edges:
        _, mapping = relabel_with_base(fw.graph, sorted(fw.graph.edges)[0])
        fw = fw.relabel(mapping)
    if consts is None:
        consts = Constants.generic_for(fw.lengths[edge_key(1, 2)])
    system = build_soe(fw, consts)
    n = fw.graph.n
    w = degeneracy_direction(n)
    faces = face_system(system, w)
    point = degeneracy_witness_point(n, consts, fw.lengths[edge_key(1, 2)])
    values = evaluate(faces, point)
    if any(x.is_zero() for x in point):
        return False
    return all(v.is_zero() for v in values)
