"""Module Groebner bases, syzygies, and minimal generators over Q[x1..xn].

Vectors live in a free module R^m.  The term order is term-over-position:
compare monomials degrevlex first, then prefer the lower component index.
Graded bookkeeping allows a degree shift per ambient component, so syzygy
modules of rows of different orders stay honestly graded.

Syzygies use tagged generators: each generator is augmented with a fresh
tracking component, a basis is completed under a block order that makes
every original component beat every tracking component, and the elements
supported purely on tracking components are exactly a reduced basis of the
syzygy module.

Completion is staged by degree.  Since all inputs are homogeneous, the basis
completed through all S-pairs of degree <= d decides membership for any
vector of degree <= d; ``minimal_graded_generators`` leans on that to filter
candidates in one ascending sweep (graded Nakayama).
"""

import heapq
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .config import DegreeCapExceeded, degree_cap
from .poly import Poly, mono_divides, mono_lcm, mono_mul, mono_sub

ORDER_TAG = "degrevlex, term over position, low component wins ties"


# ---------------------------------------------------------------------------
# sparse module vectors: dict (component, monomial) -> Fraction

def _to_sparse(vec):
    out = {}
    for c, p in enumerate(vec):
        for m, v in p.terms.items():
            out[(c, m)] = v
    return out


def _to_polys(sparse, ambient_rank, n):
    cols = [dict() for _ in range(ambient_rank)]
    for (c, m), v in sparse.items():
        cols[c][m] = v
    return tuple(Poly(n, terms) for terms in cols)


def _vec_degree(sparse, shifts):
    return max(sum(m) + shifts[c] for (c, m) in sparse)


def _is_homogeneous(sparse, shifts):
    degs = {sum(m) + shifts[c] for (c, m) in sparse}
    return len(degs) <= 1


def _canonical_rep(sparse):
    return tuple(sorted(
        (c, m, v.numerator, v.denominator) for (c, m), v in sparse.items()
    ))


class _Order:
    """Shifted TOP order on R^m terms, optionally with an elimination block.

    Terms in components below ``block_start`` always exceed terms at or above
    it; that is the elimination property the syzygy harvest relies on.
    """

    def __init__(self, shifts, block_start=None):
        self.shifts = shifts
        self.block_start = block_start

    def key(self, term):
        c, m = term
        base = (sum(m) + self.shifts[c],) + tuple(-e for e in reversed(m)) + (-c,)
        if self.block_start is None:
            return base
        return (1 if c < self.block_start else 0,) + base


# ---------------------------------------------------------------------------
# presentations

@dataclass(frozen=True)
class GradedPresentation:
    """Homogeneous generators of a graded submodule of R^ambient_rank."""

    n: int
    ambient_rank: int
    generators: tuple
    shifts: tuple = None

    def __post_init__(self):
        shifts = self.shifts if self.shifts is not None else (0,) * self.ambient_rank
        object.__setattr__(self, "shifts", tuple(shifts))
        object.__setattr__(self, "generators", tuple(tuple(g) for g in self.generators))
        if len(self.shifts) != self.ambient_rank:
            raise ValueError("one shift per ambient component required")
        for g in self.generators:
            if len(g) != self.ambient_rank:
                raise ValueError("generator arity does not match ambient rank")
            s = _to_sparse(g)
            if not s:
                raise ValueError("zero generator not allowed")
            if not _is_homogeneous(s, self.shifts):
                raise ValueError("generator is not homogeneous")

    def generator_degrees(self):
        return tuple(_vec_degree(_to_sparse(g), self.shifts) for g in self.generators)

    def degree_histogram(self):
        return dict(Counter(self.generator_degrees()))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced basis: monic elements, sorted by leading term, autoreduced."""

    n: int
    ambient_rank: int
    elements: tuple
    shifts: tuple
    order_tag: str = ORDER_TAG
    _sparse: tuple = field(default=None, repr=False, compare=False)

    def leading_terms(self):
        order = _Order(self.shifts)
        return tuple(max(_to_sparse(e), key=order.key) for e in self.elements)


# ---------------------------------------------------------------------------
# the worker

def _reduce_sparse(vec, by_component, order):
    """Full normal form of a sparse vector against monic reducers."""
    work = dict(vec)
    out = {}
    key = order.key
    while work:
        term = max(work, key=key)
        c, m = term
        coef = work.pop(term)
        reducer = None
        for lead_m, red in by_component.get(c, ()):
            if mono_divides(lead_m, m):
                reducer = (lead_m, red)
                break
        if reducer is None:
            out[term] = coef
            continue
        lead_m, red = reducer
        q = mono_sub(m, lead_m)
        for (c2, m2), v in red.items():
            t = (c2, mono_mul(q, m2))
            if t == term:
                continue
            nv = work.get(t, _ZERO) - coef * v
            if nv:
                work[t] = nv
            else:
                work.pop(t, None)
    return out


_ZERO = Fraction(0)


class ModuleGB:
    """Incremental Buchberger completion, staged by (shifted) degree."""

    def __init__(self, ambient_rank, order, cap):
        self.ambient_rank = ambient_rank
        self.order = order
        self.cap = cap
        self.basis = []
        self.leads = []
        self.by_component = {}
        self.pairs = []
        self._counter = 0

    def _register(self, vec):
        lead = max(vec, key=self.order.key)
        lc = vec[lead]
        if lc != 1:
            inv = Fraction(1) / lc
            vec = {t: v * inv for t, v in vec.items()}
        idx = len(self.basis)
        self.basis.append(vec)
        self.leads.append(lead)
        comp, mono = lead
        self.by_component.setdefault(comp, []).append((mono, vec))
        for j in range(idx):
            jc, jm = self.leads[j]
            if jc == comp:
                lcm = mono_lcm(jm, mono)
                deg = sum(lcm) + self.order.shifts[comp]
                self._counter += 1
                heapq.heappush(self.pairs, (deg, self._counter, j, idx))

    def add(self, vec):
        """Reduce against the current basis and insert if nonzero."""
        red = _reduce_sparse(vec, self.by_component, self.order)
        if not red:
            return False
        self._register(red)
        return True

    def ensure_degree(self, deg):
        """Process every queued S-pair of shifted degree <= deg."""
        while self.pairs and self.pairs[0][0] <= deg:
            _, _, i, j = heapq.heappop(self.pairs)
            ci, mi = self.leads[i]
            _, mj = self.leads[j]
            lcm = mono_lcm(mi, mj)
            qi, qj = mono_sub(lcm, mi), mono_sub(lcm, mj)
            s = {}
            for (c, m), v in self.basis[i].items():
                s[(c, mono_mul(qi, m))] = v
            for (c, m), v in self.basis[j].items():
                t = (c, mono_mul(qj, m))
                nv = s.get(t, _ZERO) - v
                if nv:
                    s[t] = nv
                else:
                    s.pop(t, None)
            red = _reduce_sparse(s, self.by_component, self.order)
            if red:
                self._register(red)

    def complete(self):
        self.ensure_degree(self.cap)
        if self.pairs:
            deg = self.pairs[0][0]
            raise DegreeCapExceeded(
                f"completion needs S-pairs of degree {deg}, above cap {self.cap}")

    def normal_form(self, vec, deg=None):
        if deg is None:
            self.complete()
        else:
            self.ensure_degree(deg)
        return _reduce_sparse(vec, self.by_component, self.order)

    def reduced_elements(self):
        """Unique reduced basis: minimal leads, tails fully reduced, monic."""
        self.complete()
        items = list(zip(self.leads, self.basis))
        keep = []
        for idx, (lead, vec) in enumerate(items):
            c, m = lead
            redundant = False
            for jdx, (lead2, _) in enumerate(items):
                if jdx == idx:
                    continue
                c2, m2 = lead2
                if c2 == c and mono_divides(m2, m) and (m2 != m or jdx < idx):
                    redundant = True
                    break
            if not redundant:
                keep.append((lead, vec))
        final = []
        for i, (lead, vec) in enumerate(keep):
            by_comp = {}
            for j, (lead2, vec2) in enumerate(keep):
                if j != i:
                    by_comp.setdefault(lead2[0], []).append((lead2[1], vec2))
            red = _reduce_sparse(vec, by_comp, self.order)
            lc = red[max(red, key=self.order.key)]
            if lc != 1:
                inv = Fraction(1) / lc
                red = {t: v * inv for t, v in red.items()}
            final.append(red)
        final.sort(key=lambda v: self.order.key(max(v, key=self.order.key)))
        return final


def _worker_for(pres, cap=None):
    order = _Order(pres.shifts)
    gb = ModuleGB(pres.ambient_rank, order, degree_cap(cap))
    for g in pres.generators:
        gb.add(_to_sparse(g))
    return gb


# ---------------------------------------------------------------------------
# public operations

def reduced_groebner(pres, cap=None):
    gb = _worker_for(pres, cap)
    elems = gb.reduced_elements()
    return GroebnerBasis(
        n=pres.n,
        ambient_rank=pres.ambient_rank,
        elements=tuple(_to_polys(e, pres.ambient_rank, pres.n) for e in elems),
        shifts=pres.shifts,
        _sparse=tuple(tuple(sorted(e.items())) for e in elems),
    )


def normal_form(vec, gb):
    """Full remainder of a vector of polynomials against a reduced basis."""
    order = _Order(gb.shifts)
    by_comp = {}
    for e in gb.elements:
        s = _to_sparse(e)
        lead = max(s, key=order.key)
        by_comp.setdefault(lead[0], []).append((lead[1], s))
    red = _reduce_sparse(_to_sparse(tuple(vec)), by_comp, order)
    return _to_polys(red, gb.ambient_rank, gb.n)


def syzygies(pres, cap=None):
    """Reduced generating set of the relation module of ``pres``'s generators.

    The result lives in R^k (k = number of generators) with shifts equal to
    the generator degrees, so its own grading is honest.
    """
    m = pres.ambient_rank
    gens = [_to_sparse(g) for g in pres.generators]
    k = len(gens)
    degs = tuple(_vec_degree(g, pres.shifts) for g in gens)
    order = _Order(pres.shifts + degs, block_start=m)
    gb = ModuleGB(m + k, order, degree_cap(cap))
    for i, g in enumerate(gens):
        tagged = dict(g)
        tagged[(m + i, (0,) * pres.n)] = Fraction(1)
        gb.add(tagged)
    harvested = []
    for e in gb.reduced_elements():
        if all(c >= m for (c, _) in e):
            harvested.append({(c - m, mono): v for (c, mono), v in e.items()})
    return GradedPresentation(
        n=pres.n,
        ambient_rank=k,
        generators=tuple(_to_polys(h, k, pres.n) for h in harvested),
        shifts=degs,
    )


def minimal_graded_generators(pres, cap=None):
    """Greedy minimal generating subset, ascending by degree (graded Nakayama).

    An element is kept exactly when it is not a combination of elements kept
    before it; processing degrees in increasing order makes the count per
    degree equal to dim M_d / (R_+ M)_d, which is the minimal possible.
    """
    gens = [_to_sparse(g) for g in pres.generators]
    order = _Order(pres.shifts)
    decorated = sorted(
        (( _vec_degree(g, pres.shifts), _canonical_rep(g)), i)
        for i, g in enumerate(gens)
    )
    gb = ModuleGB(pres.ambient_rank, order, degree_cap(cap))
    kept = []
    for (deg, _), i in decorated:
        red = gb.normal_form(gens[i], deg=deg)
        if red:
            gb._register(red)
            kept.append(pres.generators[i])
    return GradedPresentation(
        n=pres.n,
        ambient_rank=pres.ambient_rank,
        generators=tuple(kept),
        shifts=pres.shifts,
    )


def module_equality(a, b, cap=None):
    """Do two presentations generate the same submodule of R^m?"""
    if a.n != b.n or a.ambient_rank != b.ambient_rank:
        raise ValueError("presentations live in different ambient modules")
    zero_shifts = (0,) * a.ambient_rank
    wa = ModuleGB(a.ambient_rank, _Order(zero_shifts), degree_cap(cap))
    for g in a.generators:
        wa.add(_to_sparse(g))
    wb = ModuleGB(b.ambient_rank, _Order(zero_shifts), degree_cap(cap))
    for g in b.generators:
        wb.add(_to_sparse(g))
    wa.complete()
    wb.complete()
    for g in b.generators:
        if wa.normal_form(_to_sparse(g)):
            return False
    for g in a.generators:
        if wb.normal_form(_to_sparse(g)):
            return False
    return True


def generic_rank(rows, n=None):
    """Rank over the fraction field, by fraction-free (Bareiss) elimination."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    if n is None:
        n = rows[0][0].n
    ncols = len(rows[0])
    mat = [row[:] for row in rows]
    prev = Poly.one(n)
    r = 0
    limit = min(len(mat), ncols)
    while r < limit:
        best = None
        for i in range(r, len(mat)):
            for j in range(r, ncols):
                p = mat[i][j]
                if p.is_zero():
                    continue
                cand = (p.degree(), len(p.terms), i, j)
                if best is None or cand < best:
                    best = cand
        if best is None:
            break
        _, _, bi, bj = best
        if bi != r:
            mat[r], mat[bi] = mat[bi], mat[r]
        if bj != r:
            for row in mat:
                row[r], row[bj] = row[bj], row[r]
        piv = mat[r][r]
        for i in range(r + 1, len(mat)):
            head = mat[i][r]
            for j in range(r + 1, ncols):
                num = mat[i][j] * piv - head * mat[r][j]
                mat[i][j] = num.divexact(prev) if num else num
            mat[i][r] = Poly.zero(n)
        prev = piv
        r += 1
    return r
