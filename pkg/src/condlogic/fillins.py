"""The seven fill-in constructors: from a general frame to a full conditional frame.

A fill-in keeps every admissible relation untouched and assigns relations
to the remaining upsets by a uniform recipe.  The admissible family plays
the role the clopen upsets play in the topological picture; finitely it is
the only faithful residue of the topology, which is why fill-ins take
general frames rather than plain conditional frames (on the latter every
fill-in would be vacuous).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .errors import SqueezeAmbiguityError, SqueezePreconditionError
from .frames import ConditionalFrame, GeneralFrame, Rows
from .order import all_upsets, mask_to_key, up_closure


class FillInKind(enum.Enum):
    EMPTY = "empty"
    REFLEXIVE = "reflexive"
    PRINCIPAL = "principal"
    TOTAL = "total"
    UNION = "union"
    TRANSITIVE = "transitive"
    SQUEEZE = "squeeze"

    @staticmethod
    def from_name(name: str) -> "FillInKind":
        for kind in FillInKind:
            if kind.value == name:
                return kind
        raise ValueError(f"unknown fill-in kind {name!r}")


ALL_KINDS: Tuple[FillInKind, ...] = tuple(FillInKind)


@dataclass
class SqueezeReport:
    id_violations: List[Tuple[int, int]] = field(default_factory=list)
    icc_violations: List[Tuple[int, int, int]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.id_violations and not self.icc_violations

    def first_witness(self):
        if self.id_violations:
            a, x = self.id_violations[0]
            return ("id-corr", mask_to_key(a), x)
        if self.icc_violations:
            a, b, x = self.icc_violations[0]
            return ("icc-corr", mask_to_key(a), mask_to_key(b), x)
        return None


def check_squeeze_precondition(g: GeneralFrame) -> SqueezeReport:
    """The cautious-conditional conditions over the admissible family.

    id-corr: R_a[x] within a.  icc-corr: R_a[x] within b within a forces
    the up-closures of R_a[x] and R_b[x] to coincide.
    """
    report = SqueezeReport()
    p = g.order
    for a in g.admissible:
        rows = g.rel(a)
        for x in range(p.n):
            if rows[x] & ~a:
                report.id_violations.append((a, x))
    for a in g.admissible:
        rows_a = g.rel(a)
        for b in g.admissible:
            if b & ~a:
                continue  # need b within a
            rows_b = g.rel(b)
            for x in range(p.n):
                if rows_a[x] & ~b:
                    continue  # need R_a[x] within b
                if up_closure(p, rows_a[x]) != up_closure(p, rows_b[x]):
                    report.icc_violations.append((a, b, x))
    return report


def _fill_rows(g: GeneralFrame, kind: FillInKind, a: int) -> Rows:
    """Relation assigned to the non-admissible upset ``a``."""
    p = g.order
    n = p.n
    if kind is FillInKind.EMPTY:
        return (0,) * n
    if kind is FillInKind.REFLEXIVE:
        return (a,) * n
    if kind is FillInKind.PRINCIPAL:
        return tuple(p.up[x] for x in range(n))
    if kind is FillInKind.TOTAL:
        return g.rel(p.full_mask)
    if kind is FillInKind.UNION:
        rows = []
        for x in range(n):
            acc = 0
            for c in g.admissible:
                if not c & ~a:
                    acc |= g.rel(c)[x]
            rows.append(acc)
        return tuple(rows)
    if kind is FillInKind.TRANSITIVE:
        rows = []
        for x in range(n):
            acc = 0
            for c in g.admissible:
                rel_c = g.rel(c)
                for y in range(n):
                    if p.leq(x, y) and not rel_c[y] & ~a:
                        acc |= rel_c[y]
            rows.append(acc)
        return tuple(rows)
    raise AssertionError(kind)


def _squeeze_rows(g: GeneralFrame, a: int) -> Rows:
    """Copy the squeezing admissible relation where one exists, else the upset itself.

    All squeezers agree up to up-closure under the precondition; the one
    with the smallest upset encoding is copied, so the construction is
    deterministic.  Disagreement beyond up-closure signals a precondition
    bug and is raised, not papered over.
    """
    p = g.order
    rows = []
    for x in range(p.n):
        squeezers = [c for c in g.admissible if not g.rel(c)[x] & ~a and not a & ~c]
        if squeezers:
            images = {up_closure(p, g.rel(c)[x]) for c in squeezers}
            if len(images) > 1:
                raise SqueezeAmbiguityError(
                    f"squeezers of {{{mask_to_key(a)}}} at world {x} disagree"
                )
            rows.append(g.rel(squeezers[0])[x])
        else:
            rows.append(a)
    return tuple(rows)


def fill(g: GeneralFrame, kind: FillInKind) -> ConditionalFrame:
    """Extend ``g`` to a full conditional frame by the given recipe.

    The result agrees with ``g`` on every admissible upset.  The squeeze
    recipe additionally requires the cautious-conditional precondition and
    raises with a witness when it fails.
    """
    if kind is FillInKind.SQUEEZE:
        pre = check_squeeze_precondition(g)
        if not pre.holds:
            raise SqueezePreconditionError(pre.first_witness())
    admissible = set(g.admissible)
    relations: Dict[int, Rows] = dict(g.relations)
    for a in all_upsets(g.order):
        if a in admissible:
            continue
        if kind is FillInKind.SQUEEZE:
            relations[a] = _squeeze_rows(g, a)
        else:
            relations[a] = _fill_rows(g, kind, a)
    return ConditionalFrame(g.order, relations)


def fill_empty(g: GeneralFrame) -> ConditionalFrame:
    return fill(g, FillInKind.EMPTY)


def fill_reflexive(g: GeneralFrame) -> ConditionalFrame:
    return fill(g, FillInKind.REFLEXIVE)


def fill_principal(g: GeneralFrame) -> ConditionalFrame:
    return fill(g, FillInKind.PRINCIPAL)


def fill_total(g: GeneralFrame) -> ConditionalFrame:
    return fill(g, FillInKind.TOTAL)


def fill_union(g: GeneralFrame) -> ConditionalFrame:
    return fill(g, FillInKind.UNION)


def fill_transitive(g: GeneralFrame) -> ConditionalFrame:
    return fill(g, FillInKind.TRANSITIVE)


def fill_squeeze(g: GeneralFrame) -> ConditionalFrame:
    return fill(g, FillInKind.SQUEEZE)
