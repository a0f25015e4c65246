"""Matrices of constant-coefficient differential operators.

An operator is stored through its full symbol: a matrix of polynomials in
the formal derivative variables, one row per target component and one
column per source component.  Substituting partial derivatives for the
variables recovers the action on sections, which :func:`apply` does for
polynomial sections.

Everything downstream (compatibility conditions, adjoints, generic rank)
works on this symbol matrix with exact rational arithmetic.
"""

from dataclasses import dataclass, field

from . import groebner
from .bundles import BundleBasis, free_basis
from .poly import Poly


@dataclass(frozen=True)
class OperatorMatrix:
    """A differential operator between two labeled bundles."""

    name: str
    n: int
    source: BundleBasis
    target: BundleBasis
    rows: tuple = field(repr=False)   # rows[i][j]: Poly, i over target, j over source

    def __post_init__(self):
        if len(self.rows) != self.target.dim:
            raise ValueError(
                f"{self.name}: {len(self.rows)} rows for target of dim {self.target.dim}")
        for r in self.rows:
            if len(r) != self.source.dim:
                raise ValueError(
                    f"{self.name}: row width {len(r)} for source of dim {self.source.dim}")

    @property
    def shape(self):
        return (self.target.dim, self.source.dim)

    @property
    def order(self):
        """Largest total degree appearing in the symbol (zero operator: 0)."""
        degs = [p.degree() for row in self.rows for p in row if not p.is_zero()]
        return max(degs) if degs else 0

    def is_zero(self):
        return all(p.is_zero() for row in self.rows for p in row)

    def entry(self, i, j):
        return self.rows[i][j]

    def row_degrees(self):
        return tuple(
            max((p.degree() for p in row if not p.is_zero()), default=0)
            for row in self.rows)

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return (self.source.key() == other.source.key()
                and self.target.key() == other.target.key()
                and self.rows == other.rows)

    def __repr__(self):
        return (f"OperatorMatrix({self.name}: {self.source.label} -> "
                f"{self.target.label}, shape {self.shape}, order {self.order})")


def make_operator(name, n, source, target, rows):
    return OperatorMatrix(
        name=name, n=n, source=source, target=target,
        rows=tuple(tuple(r) for r in rows))


def compose(outer, inner):
    """Operator composition (apply ``inner`` first); symbols multiply."""
    if outer.source.key() != inner.target.key():
        raise ValueError(
            f"cannot compose {outer.name} o {inner.name}: "
            f"{outer.source.label} != {inner.target.label}")
    n = outer.n
    rows = []
    for i in range(outer.target.dim):
        row = []
        for j in range(inner.source.dim):
            acc = Poly.zero(n)
            for k in range(outer.source.dim):
                a = outer.rows[i][k]
                if a.is_zero():
                    continue
                b = inner.rows[k][j]
                if b.is_zero():
                    continue
                acc = acc + a * b
            row.append(acc)
        rows.append(tuple(row))
    return OperatorMatrix(
        name=f"{outer.name} o {inner.name}", n=n,
        source=inner.source, target=outer.target, rows=tuple(rows))


def adjoint(op):
    """Formal adjoint: transpose the symbol and negate the variables.

    Sources and targets swap and pick up the dual relabeling, so applying
    the adjoint twice returns an operator equal to the original.
    """
    n = op.n
    rows = tuple(
        tuple(op.rows[i][j].negate_vars() for i in range(op.target.dim))
        for j in range(op.source.dim))
    if op.name.startswith("ad(") and op.name.endswith(")"):
        name = op.name[3:-1]
    else:
        name = f"ad({op.name})"
    return OperatorMatrix(
        name=name, n=n, source=op.target.dual(), target=op.source.dual(),
        rows=rows)


def rows_presentation(op):
    """The rows of the symbol as a graded submodule of R^(source dim)."""
    return groebner.GradedPresentation(
        n=op.n,
        ambient_rank=op.source.dim,
        generators=tuple(tuple(row) for row in op.rows),
    )


def compatibility_conditions(op, cap=None, target_label=None):
    """Minimal generating operator for the relations among the rows of ``op``.

    Any operator annihilating the image of ``op`` factors through the
    returned one; composing it with ``op`` gives the exact zero matrix.
    """
    syz = groebner.syzygies(rows_presentation(op), cap=cap)
    gens = groebner.minimal_graded_generators(syz, cap=cap)
    label = target_label or f"CC({op.target.label})"
    k = len(gens.generators)
    target = free_basis(label, op.n, [f"q{i}" for i in range(1, k + 1)])
    return OperatorMatrix(
        name=f"cc({op.name})", n=op.n, source=op.target, target=target,
        rows=tuple(tuple(g) for g in gens.generators))


def differential_rank(op):
    """Rank of the symbol over the rational function field."""
    if op.target.dim == 0 or op.source.dim == 0:
        return 0
    return groebner.generic_rank([list(r) for r in op.rows], n=op.n)


def apply(op, sections):
    """Apply the operator to polynomial sections of its source bundle.

    ``sections`` lists one polynomial (in the base coordinates) per source
    component; each symbol monomial acts as the matching mixed partial.
    """
    if len(sections) != op.source.dim:
        raise ValueError("one section component per source basis element")
    out = []
    for row in op.rows:
        acc = Poly.zero(op.n)
        for p, s in zip(row, sections):
            if p.is_zero() or s.is_zero():
                continue
            for mono, coef in p.terms.items():
                d = s.apply_derivation(mono)
                if not d.is_zero():
                    acc = acc + d.scale(coef)
        out.append(acc)
    return out


def zero_operator(name, n, source, target):
    z = Poly.zero(n)
    return OperatorMatrix(
        name=name, n=n, source=source, target=target,
        rows=tuple(tuple(z for _ in range(source.dim)) for _ in range(target.dim)))


def from_scalar_matrix(name, n, source, target, matrix):
    """Order-zero operator from a rational matrix (target dim x source dim)."""
    rows = tuple(
        tuple(Poly.constant(n, c) for c in row) for row in matrix)
    return OperatorMatrix(name=name, n=n, source=source, target=target, rows=rows)
