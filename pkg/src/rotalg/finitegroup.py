"""Matrix-level model of crossed products by finite abelian groups.

Everything is finite dimensional: an element of C(X) x| G is a map from
group elements to complex-rational functions on the point set, multiplied
by the covariance rule (shift conjugation acts on coefficients).  Exact
Gaussian-rational linear algebra decides spans, ranks and intersections,
so the structural statements (properness of ideals, intersections with
C(X), non-crossed-product coefficient spaces) are certified, not sampled.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exactnum import QI, qi, qi_add, qi_conj, qi_is_zero, qi_mul, qi_neg

__all__ = [
    "FiniteAbelianGroup", "FiniteAction", "CrossedMatrixElement",
    "augmentation_ideal", "build_BI", "check_no_intermediate_M2",
    "check_not_from_subgroup", "extend_ideal",
    "elem_mul", "elem_adj", "expectation_onto_functions",
    "expectation_weighted", "regular_matrix",
]

_Z = qi(0)
_ONE = qi(1)


def qi_div(a: QI, b: QI) -> QI:
    d = b[0] * b[0] + b[1] * b[1]
    if not d:
        raise ZeroDivisionError
    return ((a[0] * b[0] + a[1] * b[1]) / d, (a[1] * b[0] - a[0] * b[1]) / d)


# -- exact linear algebra over Q(i) -------------------------------------------


def _rref(rows: list[list[QI]]) -> list[list[QI]]:
    """Reduced basis of the row span (Gaussian elimination over Q(i))."""
    rows = [list(r) for r in rows]
    basis: list[list[QI]] = []
    pivots: list[int] = []
    for r in rows:
        for b, p in zip(basis, pivots):
            c = r[p]
            if not qi_is_zero(c):
                r = [qi_add(x, qi_neg(qi_mul(c, y))) for x, y in zip(r, b)]
        p = next((i for i, x in enumerate(r) if not qi_is_zero(x)), None)
        if p is None:
            continue
        inv = r[p]
        r = [qi_div(x, inv) for x in r]
        for i, (b, bp) in enumerate(zip(basis, pivots)):
            c = b[p]
            if not qi_is_zero(c):
                basis[i] = [qi_add(x, qi_neg(qi_mul(c, y))) for x, y in zip(b, r)]
        basis.append(r)
        pivots.append(p)
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return [basis[i] for i in order]


def _rank(rows: list[list[QI]]) -> int:
    return len(_rref(rows))


def _in_span(basis_rref: list[list[QI]], v: list[QI]) -> bool:
    r = list(v)
    for b in basis_rref:
        p = next(i for i, x in enumerate(b) if not qi_is_zero(x))
        c = r[p]
        if not qi_is_zero(c):
            r = [qi_add(x, qi_neg(qi_mul(c, y))) for x, y in zip(r, b)]
    return all(qi_is_zero(x) for x in r)


# -- groups and actions --------------------------------------------------------


class FiniteAbelianGroup:
    """Element list plus Cayley table; elements are arbitrary hashables."""

    def __init__(self, elements: Sequence, table: dict):
        self.elements = list(elements)
        self.table = dict(table)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate elements")
        for a in self.elements:
            for b in self.elements:
                if self.table[(a, b)] != self.table[(b, a)]:
                    raise ValueError("group is not abelian")
        self.identity = next(e for e in self.elements
                             if all(self.table[(e, a)] == a for a in self.elements))
        self.inverse = {a: next(b for b in self.elements
                                if self.table[(a, b)] == self.identity)
                        for a in self.elements}

    @staticmethod
    def cyclic(n: int) -> "FiniteAbelianGroup":
        els = list(range(n))
        return FiniteAbelianGroup(els, {(a, b): (a + b) % n for a in els for b in els})

    def mul(self, a, b):
        return self.table[(a, b)]

    def __len__(self) -> int:
        return len(self.elements)

    def subgroups(self) -> list[frozenset]:
        """All subgroups (fine at these sizes)."""
        out = {frozenset([self.identity])}
        for seed in self.elements:
            cur = {self.identity, seed}
            grown = True
            while grown:
                grown = False
                for a in list(cur):
                    for b in list(cur):
                        c = self.mul(a, b)
                        if c not in cur:
                            cur.add(c)
                            grown = True
            out.add(frozenset(cur))
        # close the collection under joins of pairs
        changed = True
        while changed:
            changed = False
            for s in list(out):
                for t in list(out):
                    u = set(s | t)
                    grown = True
                    while grown:
                        grown = False
                        for a in list(u):
                            for b in list(u):
                                c = self.mul(a, b)
                                if c not in u:
                                    u.add(c)
                                    grown = True
                    fu = frozenset(u)
                    if fu not in out:
                        out.add(fu)
                        changed = True
        return sorted(out, key=lambda s: (len(s), sorted(map(str, s))))


class FiniteAction:
    """Action of a finite abelian group on points 0..npoints-1 with an
    invariant rational probability weighting of full support."""

    def __init__(self, group: FiniteAbelianGroup, npoints: int,
                 act: dict, weights: Optional[Sequence[Fraction]] = None):
        self.group = group
        self.npoints = npoints
        self.act = {g: tuple(act[g]) for g in group.elements}
        if weights is None:
            weights = [Fraction(1, npoints)] * npoints
        self.weights = [Fraction(w) for w in weights]
        e = group.identity
        if self.act[e] != tuple(range(npoints)):
            raise ValueError("identity must act trivially")
        for a in group.elements:
            for b in group.elements:
                ab = group.mul(a, b)
                composed = tuple(self.act[a][self.act[b][x]] for x in range(npoints))
                if composed != self.act[ab]:
                    raise ValueError("not a group action")
        if sum(self.weights) != 1 or any(w <= 0 for w in self.weights):
            raise ValueError("weights must be a full-support probability")
        for g in group.elements:
            if any(self.weights[self.act[g][x]] != self.weights[x]
                   for x in range(npoints)):
                raise ValueError("weights must be invariant")

    def apply(self, g, x: int) -> int:
        return self.act[g][x]

    @staticmethod
    def swap_two_fix_one() -> "FiniteAction":
        """Order-two group on three points: swap the first two, fix the third."""
        G = FiniteAbelianGroup.cyclic(2)
        return FiniteAction(G, 3, {0: (0, 1, 2), 1: (1, 0, 2)})

    @staticmethod
    def swap_two() -> "FiniteAction":
        G = FiniteAbelianGroup.cyclic(2)
        return FiniteAction(G, 2, {0: (0, 1), 1: (1, 0)})


# -- crossed product elements ---------------------------------------------------

# an element is a dict g -> coefficient vector (tuple of QI over the points)


@dataclass
class CrossedMatrixElement:
    action: FiniteAction
    coeffs: dict  # g -> tuple[QI, ...]

    def vec(self) -> list[QI]:
        """Flatten to a vector over (group element, point)."""
        out = []
        for g in self.action.group.elements:
            row = self.coeffs.get(g)
            out.extend(row if row is not None else [_Z] * self.action.npoints)
        return out


def _const_vec(action: FiniteAction, c: QI) -> tuple:
    return tuple(c for _ in range(action.npoints))


def group_algebra_element(action: FiniteAction, scalars: dict) -> CrossedMatrixElement:
    """Element of the group algebra seen inside the crossed product."""
    return CrossedMatrixElement(action,
                                {g: _const_vec(action, qi(*s) if isinstance(s, tuple) else qi(s))
                                 for g, s in scalars.items()})


def function_element(action: FiniteAction, values: Sequence) -> CrossedMatrixElement:
    vals = tuple(v if isinstance(v, tuple) else qi(v) for v in values)
    return CrossedMatrixElement(action, {action.group.identity: vals})


def _rotate_fn(action: FiniteAction, g, f: tuple) -> tuple:
    """(g.f)(x) = f(g^{-1} x)."""
    ginv = action.group.inverse[g]
    return tuple(f[action.apply(ginv, x)] for x in range(action.npoints))


def elem_mul(a: CrossedMatrixElement, b: CrossedMatrixElement) -> CrossedMatrixElement:
    action = a.action
    out: dict = {}
    for g, f in a.coeffs.items():
        for k, h in b.coeffs.items():
            gk = action.group.mul(g, k)
            moved = _rotate_fn(action, g, h)
            piece = tuple(qi_mul(f[x], moved[x]) for x in range(action.npoints))
            if gk in out:
                out[gk] = tuple(qi_add(u, v) for u, v in zip(out[gk], piece))
            else:
                out[gk] = piece
    return CrossedMatrixElement(action, out)


def elem_adj(a: CrossedMatrixElement) -> CrossedMatrixElement:
    action = a.action
    out: dict = {}
    for g, f in a.coeffs.items():
        ginv = action.group.inverse[g]
        conj = tuple(qi_conj(c) for c in f)
        moved = _rotate_fn(action, ginv, conj)
        if ginv in out:
            out[ginv] = tuple(qi_add(u, v) for u, v in zip(out[ginv], moved))
        else:
            out[ginv] = moved
    return CrossedMatrixElement(action, out)


def elem_add(a: CrossedMatrixElement, b: CrossedMatrixElement) -> CrossedMatrixElement:
    out = dict(a.coeffs)
    for g, f in b.coeffs.items():
        out[g] = tuple(qi_add(u, v) for u, v in zip(out[g], f)) if g in out else f
    return CrossedMatrixElement(a.action, out)


def elem_scale(a: CrossedMatrixElement, c: QI) -> CrossedMatrixElement:
    return CrossedMatrixElement(
        a.action, {g: tuple(qi_mul(x, c) for x in f) for g, f in a.coeffs.items()})


def expectation_onto_functions(a: CrossedMatrixElement) -> tuple:
    """Coefficient at the identity: the canonical expectation onto C(X)."""
    e = a.action.group.identity
    return a.coeffs.get(e, _const_vec(a.action, _Z))


def expectation_weighted(a: CrossedMatrixElement) -> dict:
    """Weight-average each coefficient: the expectation onto the group algebra."""
    w = a.action.weights
    out = {}
    for g, f in a.coeffs.items():
        s = _Z
        for x in range(a.action.npoints):
            s = qi_add(s, qi_mul(qi(w[x]), f[x]))
        out[g] = s
    return out


def regular_matrix(a: CrossedMatrixElement) -> list[list[QI]]:
    """The element in the regular representation on (group x points)."""
    action = a.action
    G = action.group
    idx = {(h, x): i for i, (h, x) in enumerate(
        (h, x) for h in G.elements for x in range(action.npoints))}
    n = len(idx)
    M = [[_Z] * n for _ in range(n)]
    for g, f in a.coeffs.items():
        for h in G.elements:
            gh = G.mul(g, h)
            for x in range(action.npoints):
                M[idx[(gh, x)]][idx[(h, x)]] = qi_add(
                    M[idx[(gh, x)]][idx[(h, x)]], f[action.apply(gh, x)])
    return M


def _span_close_multiplicative(action: FiniteAction,
                               gens: list[CrossedMatrixElement],
                               max_dim: Optional[int] = None
                               ) -> list[CrossedMatrixElement]:
    """Close a generating set under multiplication, returning a basis."""
    basis: list[CrossedMatrixElement] = []
    rows: list[list[QI]] = []

    def try_add(el: CrossedMatrixElement) -> bool:
        nonlocal rows
        if _in_span(rows, el.vec()):
            return False
        basis.append(el)
        rows = _rref(rows + [el.vec()])
        return True

    for g in gens:
        try_add(g)
    grown = True
    while grown:
        grown = False
        for x in list(basis):
            for y in list(basis):
                if try_add(elem_mul(x, y)):
                    grown = True
        if max_dim is not None and len(basis) > max_dim:
            raise AssertionError("span closure exceeded the ambient dimension")
    return basis


# -- the five operations --------------------------------------------------------


@dataclass
class IdealReport:
    basis: list[dict]        # group-algebra vectors as {g: QI}
    dimension: int
    two_sided: bool
    proper: bool


def _ga_mul(G: FiniteAbelianGroup, u: dict, v: dict) -> dict:
    out: dict = {}
    for g, c in u.items():
        for h, d in v.items():
            gh = G.mul(g, h)
            out[gh] = qi_add(out.get(gh, _Z), qi_mul(c, d))
    return {g: c for g, c in out.items() if not qi_is_zero(c)}


def _ga_vec(G: FiniteAbelianGroup, u: dict) -> list[QI]:
    return [u.get(g, _Z) for g in G.elements]


def augmentation_ideal(group: FiniteAbelianGroup) -> IdealReport:
    """Kernel of the trivial character: spanned by (shift minus identity).

    Rejects the trivial group, verifies the two-sided ideal property by
    multiplying the basis with every shift, and properness by an exact
    rank test against the identity.
    """
    if len(group) == 1:
        raise ValueError("trivial group has no augmentation ideal")
    e = group.identity
    basis = [{g: _ONE, e: qi(-1)} if g != e else None for g in group.elements]
    basis = [b for b in basis if b]
    rows = _rref([_ga_vec(group, b) for b in basis])
    two_sided = True
    for b in basis:
        for h in group.elements:
            prod = _ga_mul(group, b, {h: _ONE})
            if not _in_span(rows, _ga_vec(group, prod)):
                two_sided = False
    proper = not _in_span(rows, _ga_vec(group, {e: _ONE}))
    return IdealReport(basis, len(rows), two_sided, proper)


@dataclass
class BIReport:
    dimension: int
    multiplicatively_closed: bool
    star_closed: bool
    functions_intersection_dim: int   # dim of (B n C(X))
    expectation_image_dim: int        # dim of E(B) inside C(X)
    sample_expectation: Optional[tuple] = None  # an E(a) with a spread of values


def build_BI(action: FiniteAction, ideal_basis: list[dict]) -> BIReport:
    """The subalgebra generated by the group algebra and ideal-compressed
    functions: span of the shifts together with eta * f * eta' over the
    ideal basis and the point functions.

    Reports dimensions and the two structural facts used downstream: how
    much of C(X) the algebra contains, and how large the image of the
    canonical expectation is.
    """
    G = action.group
    gens: list[CrossedMatrixElement] = []
    for g in G.elements:
        gens.append(group_algebra_element(action, {g: _ONE}))
    compressed: list[CrossedMatrixElement] = []
    for eta in ideal_basis:
        for etap in ideal_basis:
            left = group_algebra_element(action, eta)
            right = group_algebra_element(action, etap)
            for x in range(action.npoints):
                f = function_element(action,
                                     [_ONE if y == x else _Z for y in range(action.npoints)])
                compressed.append(elem_mul(elem_mul(left, f), right))
    gens.extend(compressed)
    basis = _span_close_multiplicative(action, gens,
                                       max_dim=len(G) * action.npoints)
    rows = _rref([b.vec() for b in basis])
    dim = len(rows)
    mult_ok = True  # closure loop ended without growth
    star_ok = all(_in_span(rows, elem_adj(b).vec()) for b in basis)

    # intersection with C(X): functions whose flattened vector lies in the span
    fn_rows = [function_element(action, [(_ONE if y == x else _Z)
                                         for y in range(action.npoints)]).vec()
               for x in range(action.npoints)]
    inter_dim = len(fn_rows) + dim - _rank(fn_rows + [b.vec() for b in basis])

    exp_rows = [list(expectation_onto_functions(b)) for b in basis]
    exp_dim = _rank(exp_rows)

    sample = None
    if compressed:
        sample = expectation_onto_functions(compressed[0])
    return BIReport(dim, mult_ok, star_ok, inter_dim, exp_dim, sample)


# 2x2 complex-rational matrices for the two-point example

_M2Basis = list[tuple[QI, QI, QI, QI]]


def _m2_mul(a, b):
    return (qi_add(qi_mul(a[0], b[0]), qi_mul(a[1], b[2])),
            qi_add(qi_mul(a[0], b[1]), qi_mul(a[1], b[3])),
            qi_add(qi_mul(a[2], b[0]), qi_mul(a[3], b[2])),
            qi_add(qi_mul(a[2], b[1]), qi_mul(a[3], b[3])))


def _m2_adj(a):
    return (qi_conj(a[0]), qi_conj(a[2]), qi_conj(a[1]), qi_conj(a[3]))


@dataclass
class M2Report:
    iso_verified: bool
    embedded_group_algebra: _M2Basis
    functions_image: _M2Basis
    trials: int
    all_generated_full: bool


def check_no_intermediate_M2(trials: int = 1000, seed: int = 0) -> M2Report:
    """Two points swapped by an order-two shift: the crossed product is the
    full 2x2 matrix algebra and nothing sits strictly between it and the
    embedded group algebra.

    The embedding sends u + v*shift to [[u(x1), v(x1)], [v(x2), u(x2)]].
    The claim is certified by generating, for structured plus randomized
    candidates outside the embedded copy, the *-algebra spanned by the
    copy and the candidate, and checking its dimension is 4 every time.
    """
    action = FiniteAction.swap_two()

    def embed(a: CrossedMatrixElement):
        u = a.coeffs.get(0, (_Z, _Z))
        v = a.coeffs.get(1, (_Z, _Z))
        return (u[0], v[0], v[1], u[1])

    # multiplicativity of the embedding on a spanning set
    iso = True
    span_elems = [group_algebra_element(action, {0: _ONE}),
                  group_algebra_element(action, {1: _ONE}),
                  function_element(action, [_ONE, _Z]),
                  function_element(action, [_Z, _ONE])]
    for x in span_elems:
        for y in span_elems:
            if embed(elem_mul(x, y)) != _m2_mul(embed(x), embed(y)):
                iso = False
            if embed(elem_adj(x)) != _m2_adj(embed(x)):
                iso = False

    eye = (qi(1), _Z, _Z, qi(1))
    swap = (_Z, qi(1), qi(1), _Z)
    copy_rows = _rref([list(eye), list(swap)])
    diag = [(qi(1), _Z, _Z, _Z), (_Z, _Z, _Z, qi(1))]

    structured = diag + [(_Z, qi(1), _Z, _Z), (_Z, _Z, qi(1), _Z),
                         (qi(1), _Z, _Z, qi(-1)), (_Z, qi(0, 1), qi(0, -1), _Z)]
    rng = random.Random(seed)

    def rand_candidate():
        return tuple(qi(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                        Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
                     for _ in range(4))

    all_full = True
    done = 0
    cands = list(structured)
    while done < trials:
        c = cands.pop(0) if cands else rand_candidate()
        if _in_span(copy_rows, list(c)):
            continue  # not a strict extension
        basis = [eye, swap, c, _m2_adj(c)]
        rows = _rref([list(b) for b in basis])
        grown = True
        while grown and len(rows) < 4:
            grown = False
            for x in list(basis):
                for y in list(basis):
                    p = _m2_mul(x, y)
                    if not _in_span(rows, list(p)):
                        basis.append(p)
                        rows = _rref(rows + [list(p)])
                        grown = True
                        if len(rows) == 4:
                            break
                if len(rows) == 4:
                    break
        if len(rows) != 4:
            all_full = False
        done += 1
    return M2Report(iso, [eye, swap], diag, done, all_full)


@dataclass
class SubgroupReport:
    distinct_from_all: bool
    coefficient_dims: dict  # g -> dim of the coefficient space of B at g
    comparisons: list[tuple]  # (subgroup elements, matches_B)


def check_not_from_subgroup(action: FiniteAction, vanish_on: set[int]) -> SubgroupReport:
    """B = C(X) + (functions vanishing on an invariant set) x| G is not of
    the form C(X) x| H for any subgroup H.

    Certified by coefficient spaces: at every nonidentity g the slice of B
    is the vanishing ideal, while a crossed product by H has either all of
    C(X) or zero there.
    """
    G = action.group
    if not vanish_on or len(vanish_on) >= action.npoints:
        raise ValueError("need a nonempty proper vanishing set")
    for g in G.elements:
        if {action.apply(g, x) for x in vanish_on} != set(vanish_on):
            raise ValueError("vanishing set must be invariant")
    ideal_pts = [x for x in range(action.npoints) if x not in vanish_on]
    e = G.identity

    def point_fn(x: int) -> list:
        return [_ONE if y == x else _Z for y in range(action.npoints)]

    gens = [function_element(action, point_fn(x)) for x in range(action.npoints)]
    for x in ideal_pts:
        f = function_element(action, point_fn(x))
        for g in G.elements:
            if g != e:
                gens.append(elem_mul(f, group_algebra_element(action, {g: _ONE})))
    basis = _span_close_multiplicative(action, gens,
                                       max_dim=len(G) * action.npoints)
    # coefficient space of B at each group element, by exact rank
    coef_dims = {}
    for g in G.elements:
        rows = [list(b.coeffs[g]) for b in basis if g in b.coeffs]
        coef_dims[g] = _rank(rows) if rows else 0

    comparisons = []
    distinct = True
    for H in G.subgroups():
        matches = all(coef_dims[g] == (action.npoints if g in H else 0)
                      for g in G.elements if g != e)
        comparisons.append((sorted(map(str, H)), matches))
        if matches:
            distinct = False
    return SubgroupReport(distinct, coef_dims, comparisons)


@dataclass
class ExtendReport:
    basis: list[dict]
    dimension: int
    two_sided: bool
    proper: bool


def extend_ideal(group: FiniteAbelianGroup, subgroup: Iterable,
                 J_basis: list[dict]) -> ExtendReport:
    """Extend an ideal of a subgroup's algebra to the whole group algebra.

    The extension is the span of eta * shift over eta in the given basis;
    properness follows from the compression onto the subgroup (checked
    exactly: the compression of the extension stays inside the original
    span, which misses the identity).
    """
    sub = frozenset(subgroup)
    e = group.identity
    if e not in sub:
        raise ValueError("subgroup must contain the identity")
    j_rows = _rref([_ga_vec(group, b) for b in J_basis])
    for u in J_basis:
        if any(g not in sub for g in u):
            raise ValueError("basis must live on the subgroup")
        for h in sub:
            if not _in_span(j_rows, _ga_vec(group, _ga_mul(group, u, {h: _ONE}))):
                raise ValueError("given span is not an ideal of the subgroup algebra")
    ext = [_ga_mul(group, u, {g: _ONE}) for u in J_basis for g in group.elements]
    ext = [u for u in ext if u]
    rows = _rref([_ga_vec(group, u) for u in ext])
    dim = len(rows)
    two_sided = all(_in_span(rows, _ga_vec(group, _ga_mul(group, u, {g: _ONE})))
                    for u in ext for g in group.elements)
    # compression onto the subgroup stays in the original span, which is the
    # structural reason the extension misses the identity
    comp_ok = all(_in_span(j_rows,
                           _ga_vec(group, {g: c for g, c in u.items() if g in sub}))
                  for u in ext)
    proper = comp_ok and not _in_span(rows, _ga_vec(group, {e: _ONE}))
    return ExtendReport(ext, dim, two_sided, proper)
