"""Character tables and class-function Fourier analysis.

Scalars are either exact (``fractions.Fraction``) or approximate
(``complex``); a table is exact only when every entry is exact.  The
symmetric-group tables are computed by the Murnaghan-Nakayama rule and
are exact integers; abelian tables involve roots of unity and are stored
approximately unless all moduli are 1 or 2.

Class ordering conventions: class 0 is always the identity class; for
symmetric groups classes and irreps are both indexed by partitions in
the canonical order of :func:`cayley_theta.groups.partitions`.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Optional, Sequence, Union

import numpy as np

from . import linalg
from .errors import CorruptTable, InvalidArgument, NeedsIrreps, SchemaError
from .groups import (AbelianProductGroup, FiniteGroup, SymmetricGroup,
                     partition_label, partitions, same_group)

Scalar = Union[Fraction, complex]

CONVOLUTION_BOUND = 5000


def conj(v: Scalar) -> Scalar:
    return v.conjugate() if isinstance(v, complex) else v


def is_exact(v) -> bool:
    return isinstance(v, (Fraction, int))


def to_complex(v: Scalar) -> complex:
    return complex(v)


# ---------------------------------------------------------------------------
# function types

@dataclass(frozen=True)
class ClassFunction:
    """One value per conjugacy class, in the group's class order."""
    group: FiniteGroup
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.group.conjugacy_classes()):
            raise InvalidArgument("one value per conjugacy class required")

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self.values)

    def at_element(self, g: int) -> Scalar:
        return self.values[self.group.class_index_of(g)]

    def total(self) -> Scalar:
        classes = self.group.conjugacy_classes()
        return sum(c.size * v for c, v in zip(classes, self.values))


@dataclass(frozen=True)
class GroupFunction:
    """One value per group element."""
    group: FiniteGroup
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.group.order:
            raise InvalidArgument("one value per element required")

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self.values)


# ---------------------------------------------------------------------------
# character tables

@dataclass(frozen=True)
class CharacterTable:
    group: FiniteGroup
    degrees: tuple
    entries: tuple          # entries[irrep][class]
    irrep_labels: tuple
    trivial_index: int
    exact: bool

    @property
    def classes(self):
        return self.group.conjugacy_classes()

    def entry(self, irrep: int, cls: int) -> Scalar:
        return self.entries[irrep][cls]

    def validate(self, tol: float = 1e-8):
        """Check all table invariants; raise CorruptTable on failure."""
        group = self.group
        classes = self.classes
        n_irreps = len(self.degrees)
        if any(len(row) != len(classes) for row in self.entries):
            raise CorruptTable("entry matrix shape mismatch")
        if sum(d * d for d in self.degrees) != group.order:
            raise CorruptTable("sum of squared degrees != group order")
        for i, d in enumerate(self.degrees):
            if _ne(self.entries[i][0], d, tol):
                raise CorruptTable(
                    f"identity-class entry of irrep {i} is not its degree")
        triv = self.entries[self.trivial_index]
        if self.degrees[self.trivial_index] != 1 or any(
                _ne(v, 1, tol) for v in triv):
            raise CorruptTable("trivial irrep row is not all ones")
        scale = max(tol * group.order, tol)
        for i in range(n_irreps):
            for j in range(i, n_irreps):
                s = sum(c.size * self.entries[i][k] * conj(self.entries[j][k])
                        for k, c in enumerate(classes))
                want = group.order if i == j else 0
                if _ne(s, want, scale):
                    raise CorruptTable(
                        f"row orthogonality fails for irreps ({i},{j})")
        for k in range(len(classes)):
            for l in range(k, len(classes)):
                s = sum(self.entries[i][k] * conj(self.entries[i][l])
                        for i in range(n_irreps))
                want = Fraction(group.order, classes[k].size) if k == l else 0
                if _ne(s, want, scale):
                    raise CorruptTable(
                        f"column orthogonality fails for classes ({k},{l})")
        return self


def _ne(value, want, tol):
    if is_exact(value):
        return value != want
    return abs(complex(value) - complex(want)) > tol


# ---------------------------------------------------------------------------
# abelian tables

def abelian_character_table(group: FiniteGroup) -> CharacterTable:
    """Characters of a product of cyclic groups: chi_j(x) =
    prod_t exp(2*pi*i*j_t*x_t/m_t).  Exact (entries +-1) when every
    modulus is 2; approximate complex otherwise."""
    if not isinstance(group, AbelianProductGroup):
        raise InvalidArgument("abelian_character_table needs an "
                              "abelian-product group")
    moduli = group.moduli
    exact = all(m <= 2 for m in moduli)
    entries = []
    labels = []
    for j in range(group.order):
        js = group.decode(j)
        row = []
        for x in range(group.order):
            xs = group.decode(x)
            if exact:
                sign = sum(a * b for a, b in zip(js, xs))
                row.append(Fraction(-1 if sign % 2 else 1))
            else:
                phase = sum(Fraction(a * b, m) for a, b, m in
                            zip(js, xs, moduli))
                row.append(cmath.exp(2j * cmath.pi * float(phase)))
        entries.append(tuple(row))
        labels.append("chi" + group.element_label(j))
    return CharacterTable(
        group=group, degrees=(1,) * group.order,
        entries=tuple(entries), irrep_labels=tuple(labels),
        trivial_index=0, exact=exact)


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama

def _beta_strip_removals(lam: tuple, k: int):
    """Yield (sign, smaller_partition) for each removable border strip of
    size k, via first-column hook (beta-set) arithmetic."""
    ell = len(lam)
    beta = [lam[i] + (ell - 1 - i) for i in range(ell)]
    bset = set(beta)
    for b in beta:
        nb = b - k
        if nb >= 0 and nb not in bset:
            height = sum(1 for c in beta if nb < c < b)
            newbeta = sorted((bset - {b}) | {nb}, reverse=True)
            newlam = tuple(newbeta[i] - (ell - 1 - i) for i in range(ell))
            yield (-1) ** height, tuple(x for x in newlam if x > 0)


@lru_cache(maxsize=None)
def mn_character(lam: tuple, mu: tuple) -> int:
    """chi_lambda(mu) by the Murnaghan-Nakayama recursion (memoized)."""
    if not mu:
        return 1 if not lam else 0
    if sum(lam) != sum(mu):
        raise InvalidArgument("partition sizes differ")
    total = 0
    for sign, smaller in _beta_strip_removals(lam, mu[0]):
        total += sign * mn_character(smaller, mu[1:])
    return total


def mn_character_reference(lam: tuple, mu: tuple) -> int:
    """Independent unmemoized recomputation of chi_lambda(mu).

    Border strips are enumerated directly on the Young diagram: a strip
    spanning rows i..j forces row r (i <= r < j) down to lam[r+1]-1
    cells, and the remaining strip cells land in row j.
    """
    if not mu:
        return 1 if not lam else 0
    k = mu[0]
    ell = len(lam)
    lam_pad = lam + (0,)
    total = 0
    for i in range(ell):
        for j in range(i, ell):
            nu = list(lam)
            cells = 0
            ok = True
            for r in range(i, j):
                nu[r] = lam_pad[r + 1] - 1
                if nu[r] < 0:
                    ok = False
                    break
                cells += lam[r] - nu[r]
            if not ok or cells >= k:
                continue
            rest = k - cells
            nu_j = lam[j] - rest
            if nu_j < lam_pad[j + 1] or nu_j < 0:
                continue
            nu[j] = nu_j
            smaller = tuple(x for x in nu if x > 0)
            total += (-1) ** (j - i) * mn_character_reference(smaller, mu[1:])
    return total


def hook_length_degree(lam: tuple) -> int:
    n = sum(lam)
    conjugate = [sum(1 for p in lam if p > j) for j in range(lam[0])] \
        if lam else []
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= row - j + conjugate[j] - i - 1
    return factorial(n) // hooks


def symmetric_character_table(n: int) -> CharacterTable:
    """Exact character table of S_n; irreps and classes are both indexed
    by partitions of n in canonical order, so the trivial irrep (n)
    comes last."""
    if not 1 <= n <= SymmetricGroup.MAX_N:
        raise InvalidArgument(f"need 1 <= n <= {SymmetricGroup.MAX_N}")
    group = SymmetricGroup(n)
    parts = partitions(n)
    entries = []
    degrees = []
    for lam in parts:
        row = tuple(Fraction(mn_character(lam, mu)) for mu in parts)
        entries.append(row)
        degree = int(row[0])
        if degree != hook_length_degree(lam):
            raise CorruptTable(
                f"degree of {lam} disagrees with the hook-length formula")
        degrees.append(degree)
    return CharacterTable(
        group=group, degrees=tuple(degrees), entries=tuple(entries),
        irrep_labels=tuple(partition_label(lam) for lam in parts),
        trivial_index=len(parts) - 1, exact=True).validate()


# ---------------------------------------------------------------------------
# table file format

def _format_scalar(v: Scalar, exact: bool):
    if exact:
        return str(Fraction(v))
    c = complex(v)
    return [c.real, c.imag]


def _parse_scalar(v, exact: bool) -> Scalar:
    if exact:
        if not isinstance(v, str):
            raise SchemaError(f"exact entries must be rational strings: {v!r}")
        return Fraction(v)
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2:
        return complex(v[0], v[1])
    raise SchemaError(f"bad approximate entry {v!r}")


def export_character_table(table: CharacterTable, path):
    classes = table.classes
    data = {
        "group_order": table.group.order,
        "class_sizes": [c.size for c in classes],
        "class_labels": [c.label for c in classes],
        "degrees": list(table.degrees),
        "irrep_labels": list(table.irrep_labels),
        "exact": table.exact,
        "entries": [_format_scalar(v, table.exact)
                    for row in table.entries for v in row],
    }
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")


def _match_class_order(file_sizes, group_classes):
    """Permutation p with p[group_class] = file_column, matched by size.

    Positional match wins when the size sequences agree; otherwise sizes
    must determine the pairing uniquely.
    """
    group_sizes = [c.size for c in group_classes]
    if file_sizes == group_sizes:
        return list(range(len(group_sizes)))
    if sorted(file_sizes) != sorted(group_sizes):
        raise SchemaError(
            f"class sizes {file_sizes} do not match the group's "
            f"{group_sizes}")
    perm = []
    used = set()
    for size in group_sizes:
        candidates = [j for j, s in enumerate(file_sizes)
                      if s == size and j not in used]
        if len(candidates) != 1:
            raise SchemaError(
                "ambiguous class ordering: duplicate class sizes require "
                "the file to use the group's class order")
        perm.append(candidates[0])
        used.add(candidates[0])
    return perm


def import_character_table(path, group: FiniteGroup) -> CharacterTable:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    for key in ("group_order", "class_sizes", "degrees", "exact", "entries"):
        if key not in data:
            raise SchemaError(f"missing field {key!r}")
    if data["group_order"] != group.order:
        raise SchemaError(
            f"file is for a group of order {data['group_order']}, "
            f"got order {group.order}")
    classes = group.conjugacy_classes()
    if len(data["class_sizes"]) != len(classes):
        raise SchemaError(
            f"file has {len(data['class_sizes'])} classes, group has "
            f"{len(classes)}")
    perm = _match_class_order(list(data["class_sizes"]), classes)
    exact = bool(data["exact"])
    degrees = tuple(int(d) for d in data["degrees"])
    n_irreps = len(degrees)
    flat = data["entries"]
    if len(flat) != n_irreps * len(classes):
        raise SchemaError("entry count mismatch")
    rows = []
    for i in range(n_irreps):
        file_row = flat[i * len(classes):(i + 1) * len(classes)]
        rows.append(tuple(_parse_scalar(file_row[perm[k]], exact)
                          for k in range(len(classes))))
    labels = data.get("irrep_labels") or [f"irrep{i}"
                                          for i in range(n_irreps)]
    trivial = next((i for i in range(n_irreps)
                    if degrees[i] == 1 and
                    all(not _ne(v, 1, 1e-8) for v in rows[i])), None)
    if trivial is None:
        raise CorruptTable("no trivial irrep row found")
    table = CharacterTable(
        group=group, degrees=degrees, entries=tuple(rows),
        irrep_labels=tuple(labels), trivial_index=trivial, exact=exact)
    return table.validate()


# ---------------------------------------------------------------------------
# Fourier analysis

def fourier_class_scalars(f: ClassFunction, table: CharacterTable):
    """Scalars c_pi with fhat(pi) = c_pi * I for a class function f:
    c_pi = (1/d_pi) sum_C |C| f(C) chi_pi(C)."""
    if not same_group(f.group, table.group):
        raise InvalidArgument("function and table use different groups")
    classes = table.classes
    out = []
    for i, d in enumerate(table.degrees):
        s = sum(c.size * fv * table.entries[i][k]
                for k, (c, fv) in enumerate(zip(classes, f.values)))
        if is_exact(s):
            out.append(Fraction(s) / d)
        else:
            out.append(complex(s) / d)
    return tuple(out)


@dataclass(frozen=True)
class PositiveTypeResult:
    ok: bool
    irrep: Optional[int] = None
    witness: Optional[object] = None

    def __bool__(self):
        return self.ok


def is_positive_type(f, rep, tol: float = 1e-9) -> PositiveTypeResult:
    """Bochner test: f is of positive type iff every Fourier transform
    fhat(pi) is positive semidefinite.

    For class functions (or any function on an abelian group) a
    CharacterTable suffices and the transforms are scalars; a general
    function on a non-abelian group needs IrrepMatrices.
    """
    if isinstance(rep, IrrepMatrices):
        return _is_positive_type_irreps(f, rep, tol)
    table = rep
    if isinstance(f, GroupFunction):
        if isinstance(f.group, AbelianProductGroup):
            # classes are singletons in element order
            f = ClassFunction(f.group, f.values)
        else:
            g = _as_class_function(f)
            if g is None:
                raise NeedsIrreps(
                    "a non-class function on a non-abelian group needs "
                    "irreducible representation matrices")
            f = g
    scalars = fourier_class_scalars(f, table)
    scale = max(1.0, float(table.group.order)) * tol
    for i, c in enumerate(scalars):
        if is_exact(c):
            if c < 0:
                return PositiveTypeResult(False, i, c)
        else:
            if abs(c.imag) > scale or c.real < -scale:
                return PositiveTypeResult(False, i, c)
    return PositiveTypeResult(True)


def _as_class_function(f: GroupFunction):
    group = f.group
    classes = group.conjugacy_classes()
    values = []
    for idx, cls in enumerate(classes):
        if cls.members is None:
            return None
        vals = {f.values[m] for m in cls.members}
        first = f.values[cls.members[0]]
        if any(_ne(v, first, 1e-12) for v in vals):
            return None
        values.append(first)
    return ClassFunction(group, tuple(values))


def _is_positive_type_irreps(f, irreps: "IrrepMatrices", tol):
    group = irreps.group
    if isinstance(f, ClassFunction):
        values = [f.at_element(g) for g in range(group.order)]
    else:
        values = list(f.values)
    for i, mats in enumerate(irreps.matrices):
        d = irreps.degrees[i]
        fhat = np.zeros((d, d), dtype=complex)
        for g in range(group.order):
            fhat += complex(values[g]) * mats[g]
        herm_defect = np.abs(fhat - fhat.conj().T).max()
        scale = max(1.0, float(np.abs(fhat).max())) * tol * 10
        if herm_defect > scale:
            return PositiveTypeResult(False, i, herm_defect)
        eigs = np.linalg.eigvalsh((fhat + fhat.conj().T) / 2)
        if eigs.min() < -max(1.0, float(group.order)) * tol:
            return PositiveTypeResult(False, i, float(eigs.min()))
    return PositiveTypeResult(True)


def convolve(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    """(f * g)(gamma) = sum_beta f(beta) g(beta^-1 gamma)."""
    if not same_group(f.group, g.group):
        raise InvalidArgument("convolution needs a shared group")
    group = f.group
    if group.order > CONVOLUTION_BOUND:
        raise InvalidArgument(
            f"direct convolution limited to order {CONVOLUTION_BOUND}")
    inv = [group.invert(b) for b in range(group.order)]
    out = []
    for gamma in range(group.order):
        s = sum(f.values[b] * g.values[group.multiply(inv[b], gamma)]
                for b in range(group.order))
        out.append(s)
    return GroupFunction(group, tuple(out))


def involute(f: GroupFunction) -> GroupFunction:
    """f^*(gamma) = conj(f(gamma^-1))."""
    group = f.group
    return GroupFunction(group, tuple(
        conj(f.values[group.invert(g)]) for g in range(group.order)))


def group_matrix(f) -> list:
    """The |G| x |G| matrix M(beta, gamma) = f(beta * gamma^-1); f is of
    positive type iff M is positive semidefinite."""
    if isinstance(f, ClassFunction):
        group = f.group
        values = [f.at_element(g) for g in range(group.order)]
    else:
        group = f.group
        values = list(f.values)
    inv = [group.invert(g) for g in range(group.order)]
    return [[values[group.multiply(b, inv[c])] for c in range(group.order)]
            for b in range(group.order)]


# ---------------------------------------------------------------------------
# explicit representation matrices

@dataclass(frozen=True)
class IrrepMatrices:
    """Unitary matrices pi(gamma) for every irrep and group element;
    matrices[i][g] is a numpy complex array of shape (d_i, d_i)."""
    group: FiniteGroup
    degrees: tuple
    matrices: tuple
    labels: tuple = None

    def validate(self, tol: float = 1e-8):
        group = self.group
        if sum(d * d for d in self.degrees) != group.order:
            raise InvalidArgument("sum of squared degrees != group order")
        for i, mats in enumerate(self.matrices):
            d = self.degrees[i]
            if len(mats) != group.order:
                raise InvalidArgument("one matrix per element required")
            if np.abs(mats[0] - np.eye(d)).max() > tol:
                raise InvalidArgument(f"irrep {i}: pi(e) != I")
            for g in range(group.order):
                defect = np.abs(mats[g] @ mats[g].conj().T - np.eye(d)).max()
                if defect > tol:
                    raise InvalidArgument(f"irrep {i}: pi({g}) not unitary")
            pairs = ((a, b) for a in range(group.order)
                     for b in range(group.order))
            if group.order > 60:
                rng = np.random.default_rng(0)
                pairs = ((int(a), int(b)) for a, b in
                         rng.integers(0, group.order, size=(2000, 2)))
            for a, b in pairs:
                prod = mats[a] @ mats[b]
                if np.abs(prod - mats[group.multiply(a, b)]).max() > tol:
                    raise InvalidArgument(
                        f"irrep {i}: homomorphism fails at ({a},{b})")
        return self

    def character_row(self, i: int):
        classes = self.group.conjugacy_classes()
        return tuple(complex(np.trace(self.matrices[i][c.representative]))
                     for c in classes)


def as_float_table(table: CharacterTable) -> CharacterTable:
    """Approximate copy of a table (for forcing float-mode pipelines)."""
    if not table.exact:
        return table
    return CharacterTable(
        group=table.group, degrees=table.degrees,
        entries=tuple(tuple(complex(v) for v in row)
                      for row in table.entries),
        irrep_labels=table.irrep_labels,
        trivial_index=table.trivial_index, exact=False)


def import_irreps(path, group: FiniteGroup) -> IrrepMatrices:
    """Read representation matrices from JSON: {"degrees": [...],
    "matrices": [irrep][element][row][col] with entries [re, im]}."""
    with open(path) as fh:
        data = json.load(fh)
    for key in ("degrees", "matrices"):
        if key not in data:
            raise SchemaError(f"missing field {key!r}")
    degrees = tuple(int(d) for d in data["degrees"])
    mats = []
    for i, per_elem in enumerate(data["matrices"]):
        if len(per_elem) != group.order:
            raise SchemaError(
                f"irrep {i}: expected {group.order} matrices")
        rows = []
        for m in per_elem:
            arr = np.array([[complex(e[0], e[1]) for e in row]
                            for row in m])
            if arr.shape != (degrees[i], degrees[i]):
                raise SchemaError(f"irrep {i}: matrix shape mismatch")
            rows.append(arr)
        mats.append(tuple(rows))
    return IrrepMatrices(group=group, degrees=degrees,
                         matrices=tuple(mats)).validate()


def export_irreps(irreps: IrrepMatrices, path):
    data = {
        "degrees": list(irreps.degrees),
        "matrices": [[[[ [v.real, v.imag] for v in row]
                       for row in np.asarray(mat).tolist()]
                      for mat in mats]
                     for mats in irreps.matrices],
    }
    with open(path, "w") as fh:
        json.dump(data, fh)
        fh.write("\n")


def abelian_irreps(table: CharacterTable) -> IrrepMatrices:
    """1x1 representation matrices read off an abelian character table."""
    group = table.group
    if not isinstance(group, AbelianProductGroup):
        raise InvalidArgument("abelian_irreps needs an abelian group")
    mats = tuple(
        tuple(np.array([[complex(table.entries[i][g])]]) for g in
              range(group.order))
        for i in range(len(table.degrees)))
    return IrrepMatrices(group=group, degrees=table.degrees, matrices=mats,
                         labels=table.irrep_labels)
