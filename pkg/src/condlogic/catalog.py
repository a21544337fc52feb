"""Axiom registry: schemas, frame correspondents, persistence tags, named logics.

Correspondents are first-order conditions quantified over the admissible
upsets a (and b where used) and all worlds x of a frame; on a full frame
the admissible family is all upsets.  Entries whose correspondence only
holds on strongly coherent poset frames (the finite stand-ins for the
topological duals) carry ``strong_scope`` and are verified against that
frame class; the remaining entries are verified against every valid frame.

Persistence is tested at the correspondent level: generate a random valid
general frame whose correspondent holds on the admissible upsets, fill in,
then re-check the correspondent over all upsets of the result.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import generate
from .errors import GenerationBudgetError, MissingCorrespondentError
from .fillins import ALL_KINDS, FillInKind, check_squeeze_precondition, fill
from .frames import GeneralFrame, frame_to_json, strongly_coherent
from .order import mask_to_worlds, up_closure
from .semantics import valid
from .syntax import Formula, Language, parse


def _iter_bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


# Each correspondent takes (order, rel, upc, a, b, x) where rel maps an
# admissible upset to its successor rows and upc memoises up-closures.

def _c_id(p, rel, upc, a, b, x):
    return not rel(a)[x] & ~a


def _c_mp(p, rel, upc, a, b, x):
    return not (a >> x) & 1 or bool((upc(rel(a)[x]) >> x) & 1)


def _c_str(p, rel, upc, a, b, x):
    return not rel(a)[x] & ~(p.up[x] & a)


def _c_unit(p, rel, upc, a, b, x):
    return not rel(a)[x] & ~p.up[x]


def _c_exf(p, rel, upc, a, b, x):
    return bool(p.up[x] & a) or rel(a)[x] == 0


def _c_tc(p, rel, upc, a, b, x):
    return bool((upc(rel(a)[x]) >> x) & 1)


def _c_cs(p, rel, upc, a, b, x):
    return not (a >> x) & 1 or not rel(a)[x] & ~p.up[x]


def _c_lin(p, rel, upc, a, b, x):
    return not rel(a)[x] & ~b or not rel(b)[x] & ~a


def _c_tr(p, rel, upc, a, b, x):
    ra = rel(a)[x]
    if ra & ~b:
        return True
    return not ra & ~upc(rel(b)[x])


def _c_mon(p, rel, upc, a, b, x):
    if a & ~b:
        return True
    return not rel(a)[x] & ~upc(rel(b)[x])


def _c_ex(p, rel, upc, a, b, x):
    target = upc(rel(a & b)[x])
    rb = rel(b)
    for y in _iter_bits(rel(a)[x]):
        if rb[y] & ~target:
            return False
    return True


def _c_red(p, rel, upc, a, b, x):
    # up-closure form: without it the condition is too strong on frames
    # whose relation rows are not upsets (cf. the tc row)
    return bool((upc(rel(p.full_mask)[x]) >> x) & 1)


def _c_vec_top(p, rel, upc, a, b, x):
    return not rel(p.full_mask)[x] & ~p.up[x]


def _c_expl(p, rel, upc, a, b, x):
    return rel(0)[x] == 0


def _c_re(p, rel, upc, a, b, x):
    ra, rb = rel(a)[x], rel(b)[x]
    if ra & ~b or rb & ~a:
        return True
    return upc(ra) == upc(rb)


def _c_icc(p, rel, upc, a, b, x):
    if b & ~a:
        return True
    ra = rel(a)[x]
    if ra & ~b:
        return True
    return upc(ra) == upc(rel(b)[x])


def _c_four(p, rel, upc, a, b, x):
    rows = rel(a)
    bound = upc(rows[x])
    for y in _iter_bits(rows[x]):
        if rows[y] & ~bound:
            return False
    return True


def _c_c4(p, rel, upc, a, b, x):
    rows = rel(a)
    composite = 0
    for y in _iter_bits(rows[x]):
        composite |= rows[y]
    return not rows[x] & ~upc(composite)


def _c_box_tc(p, rel, upc, a, b, x):
    rows = rel(a)
    for y in _iter_bits(upc(rows[x])):
        if not (upc(rows[y]) >> y) & 1:
            return False
    return True


def _c_cem1(p, rel, upc, a, b, x):
    return rel(a)[x].bit_count() <= 1


def _c_cem2(p, rel, upc, a, b, x):
    for y in _iter_bits(rel(a)[x]):
        if p.up[y] != 1 << y:
            return False
    return True


def _c_cem3(p, rel, upc, a, b, x):
    rows = rel(a)
    for y in _iter_bits(upc(rows[x])):
        if not (upc(rows[y]) >> x) & 1:
            return False
    return True


def _c_ecm1(p, rel, upc, a, b, x):
    rows = rel(a)
    below = 0
    for y in range(p.n):
        if p.leq(y, x):
            below |= rows[y]
    return not below & ~upc(rows[x])


def _c_ecm2(p, rel, upc, a, b, x):
    rows = rel(a)
    succ = rows[x]
    closure = upc(succ)
    for z in _iter_bits(closure):
        reach = upc(rows[z])
        if succ & ~reach:
            return False
    return True


def _c_true(p, rel, upc, a, b, x):
    return True


_E = FillInKind.EMPTY
_R = FillInKind.REFLEXIVE
_P = FillInKind.PRINCIPAL
_T = FillInKind.TOTAL
_U = FillInKind.UNION
_TR = FillInKind.TRANSITIVE
_S = FillInKind.SQUEEZE


@dataclass(frozen=True)
class AxiomEntry:
    key: str
    source: str
    quantifier: Optional[str]  # None, 'const', 'x', 'ax' or 'abx'
    corr: Optional[Callable]
    persistence: frozenset
    strong_scope: bool = False
    note: str = ""

    @property
    def formula(self) -> Formula:
        return _parse_cached(self.source)

    @property
    def has_correspondent(self) -> bool:
        return self.quantifier is not None


@lru_cache(maxsize=None)
def _parse_cached(src: str) -> Formula:
    return parse(src, Language.COND)


def _entry(key, source, quantifier, corr, persistence, strong_scope=False, note=""):
    return AxiomEntry(key, source, quantifier, corr, frozenset(persistence), strong_scope, note)


_ALL = frozenset(ALL_KINDS)

AXIOMS: Dict[str, AxiomEntry] = {
    e.key: e
    for e in (
        _entry("id", "p ~> p", "ax", _c_id, {_E, _R, _TR}),
        _entry("mp", "p & (p ~> q) -> q", "ax", _c_mp, {_P, _R, _T, _S}),
        _entry("mpp", "(p ~> q) -> (p -> q)", "ax", _c_mp, {_P, _R, _T}),
        _entry("str", "(p -> q) -> (p ~> q)", "ax", _c_str, {_E, _TR}),
        _entry("unit", "p -> (q ~> p)", "ax", _c_unit, {_E, _P, _U}),
        _entry("exf", "~p -> (p ~> q)", "ax", _c_exf, {_E, _U}),
        _entry("tc", "(p ~> q) -> q", "ax", _c_tc, {_P, _T, _U}),
        _entry("cs", "p & q -> (p ~> q)", "ax", _c_cs, {_E, _P}),
        _entry("lin", "(p ~> q) | (q ~> p)", "abx", _c_lin, {_E}),
        _entry("tr", "(p ~> q) & (q ~> r) -> (p ~> r)", "abx", _c_tr, {_T, _TR}),
        _entry("mon", "(p ~> r) -> ((p & q) ~> r)", "abx", _c_mon, {_U}),
        _entry("ex", "((p & q) ~> r) -> (p ~> (q ~> r))", "abx", _c_ex, {_E}),
        _entry("red", "(true ~> p) -> p", "x", _c_red, _ALL),
        _entry("vec_top", "p -> (true ~> p)", "x", _c_vec_top, _ALL),
        _entry("expl", "false ~> p", "x", _c_expl, _ALL),
        _entry("ct", "(p ~> q) & ((p & q) ~> r) -> (p ~> r)", None, None, set(),
               note="jointly with id and cm: id plus the cautious condition"),
        _entry("cm", "(p ~> q) & (p ~> r) -> ((p & q) ~> r)", None, None, set(),
               note="jointly with id and ct: id plus the cautious condition"),
        _entry("ca", "(p ~> q) -> (p ~> (p & q))", None, None, set(),
               note="no stated correspondent; semantically interchangeable with id"),
        _entry("re", "(p ~> q) & (q ~> p) & (p ~> r) -> (q ~> r)", "abx", _c_re, {_S}),
        _entry("four_c", "(p ~> q) -> (p ~> (p ~> q))", "ax", _c_four, {_E, _S}),
        _entry("c4_c", "(p ~> (p ~> q)) -> (p ~> q)", "ax", _c_c4, {_E}),
        _entry("box_tc", "p ~> ((p ~> q) -> q)", "ax", _c_box_tc, {_E}),
        _entry("cem1", "(p ~> q) | (p ~> ~q)", "ax", _c_cem1, {_E}, strong_scope=True),
        _entry("cem2", "p ~> (q | ~q)", "ax", _c_cem2, {_E}, strong_scope=True),
        _entry("cem3", "q | (p ~> ~(p ~> q))", "ax", _c_cem3, {_E}, strong_scope=True),
        _entry("ecm1", "(p ~> q) | ~(p ~> q)", "ax", _c_ecm1, {_E}, strong_scope=True),
        _entry("ecm2", "(p ~> q) | (p ~> ~(p ~> q))", "ax", _c_ecm2, {_E}, strong_scope=True),
        _entry("clin1", "p ~> ((q -> r) | (r -> q))", None, None, {_E},
               note="schema only: no stated frame correspondent"),
        _entry("clin2", "(p ~> (q -> r)) | (p ~> (r -> q))", None, None, {_E},
               note="schema only: no stated frame correspondent"),
        _entry("clin3", "(p ~> ((p ~> q) -> r)) | (p ~> ((p ~> r) -> q))", None, None, {_E},
               note="schema only: no stated frame correspondent"),
        _entry("in1", "~(p ~> q) -> (p ~> ~q)", None, None, {_E},
               note="schema only: no stated frame correspondent"),
        _entry("in2", "~(p ~> ~q) -> (p ~> q)", None, None, {_E},
               note="schema only: no stated frame correspondent"),
        _entry("or", "(p ~> r) & (q ~> r) -> ((p | q) ~> r)", None, None, set(),
               note="schema only: no stated frame correspondent"),
        _entry("k_c", "(p ~> q & r) <-> (p ~> q) & (p ~> r)", "const", _c_true, _ALL,
               note="holds on every valid frame"),
        _entry("n_c", "(p ~> true) <-> true", "const", _c_true, _ALL,
               note="holds on every valid frame"),
        _entry("simp", "(p ~> q & r) -> (p ~> q)", None, None, set(),
               note="half of k_c; schema only"),
        _entry("adj", "(p ~> q) & (p ~> r) -> (p ~> (q & r))", None, None, set(),
               note="half of k_c; schema only"),
        _entry("unit_says", "q -> (p ~> q)", "ax", _c_unit, {_E, _P, _U},
               note="letter-renamed form of unit"),
        _entry("ck", "(p ~> (q -> r)) -> ((p ~> q) -> (p ~> r))", None, None, set(),
               note="schema only: no stated frame correspondent"),
        _entry("bt", "p ~> ((p ~> q) -> q)", "ax", _c_box_tc, {_E},
               note="same schema and correspondent as box_tc"),
    )
}

# The joint cautious condition used by presets containing id, ct and cm.
ICC_CORR = ("icc", "abx", _c_icc)

PRESETS: Dict[str, Tuple[str, ...]] = {
    "ICK": (),
    "iKRI": ("mp", "tr"),
    "iCC": ("id", "ct", "cm"),
    "iCB": ("id", "ct", "cm", "re", "four_c"),
    "HLCflat": ("id", "tr"),
    "HLCsharp": ("id", "tr", "or"),
    "HLCflat_str": ("id", "tr", "str"),
    "sICL": ("unit", "c4_c"),
    "sCondACL": ("unit", "bt"),
}

# Persistence cells as printed in the overview tables; the refuted cells are
# the pairs for which a finite counterexample must be searched instead.
TABLE1_CELLS: Tuple[Tuple[str, FillInKind], ...] = tuple(
    (key, kind) for key in ("id", "mp", "mpp", "str", "unit", "exf", "tc",
                            "cs", "lin", "tr", "mon", "ex")
    for kind in sorted(AXIOMS[key].persistence - {_S}, key=lambda k: k.value)
)
TABLE2_CELLS: Tuple[Tuple[str, FillInKind], ...] = tuple(
    (key, kind) for key in ("red", "vec_top", "expl") for kind in ALL_KINDS
)
TABLE3_CELLS: Tuple[Tuple[str, FillInKind], ...] = (
    ("mp", _S), ("four_c", _S), ("re", _S),
)
TABLE4_EMPTY_CELLS: Tuple[Tuple[str, FillInKind], ...] = tuple(
    (key, _E) for key in ("unit", "four_c", "c4_c", "box_tc",
                          "cem1", "cem2", "cem3", "ecm1", "ecm2")
)
REFUTED_CELLS: Tuple[Tuple[str, FillInKind], ...] = (
    ("mp", _E), ("str", _R), ("mon", _S),
)

# Row modes used to bias random generation toward frames satisfying each
# correspondent; acceptance is re-checked, so these are hints, not proofs.
AXIOM_MODES: Dict[str, Tuple[str, ...]] = {
    "id": ("subset", "strength", "refl", "empty", "random"),
    "mp": ("diag", "strength", "refl", "diag_all"),
    "mpp": ("diag", "strength", "refl", "diag_all"),
    "str": ("strength_sub", "strength", "empty"),
    "unit": ("up_within", "strength", "empty"),
    "unit_says": ("up_within", "strength", "empty"),
    "exf": ("exf", "strength", "empty", "subset"),
    "tc": ("diag_all", "random"),
    "cs": ("up_within", "strength", "empty", "subset"),
    "lin": ("empty", "refl", "const_meet", "subset"),
    "tr": ("strength", "refl", "shared", "empty"),
    "mon": ("const_meet", "shared", "empty", "subset"),
    "ex": ("strength", "empty", "strength_sub"),
    "red": ("diag_all", "refl", "diag"),
    "vec_top": ("up_within", "strength", "empty"),
    "expl": ("subset", "empty", "strength"),
    "re": ("strength", "refl", "const_meet", "empty"),
    "four_c": ("refl", "strength", "empty", "subset"),
    "c4_c": ("diag_all", "refl", "empty"),
    "box_tc": ("refl", "strength", "empty", "diag_all"),
    "bt": ("refl", "strength", "empty", "diag_all"),
    "cem1": ("singleton", "empty"),
    "cem2": ("maximal_singleton", "empty"),
    "cem3": ("empty", "total_rows", "singleton"),
    "ecm1": ("singleton", "shared", "empty", "total_rows"),
    "ecm2": ("singleton", "shared", "empty", "total_rows"),
    "k_c": ("random",),
    "n_c": ("random",),
}
ICC_MODES: Tuple[str, ...] = ("strength", "refl", "const_meet", "empty", "subset")


@dataclass
class CorrReport:
    key: str
    holds: bool
    witness: Optional[Tuple] = None  # (a_mask, b_mask or None, world)

    def witness_json(self):
        if self.witness is None:
            return None
        a, b, x = self.witness
        return {
            "a": mask_to_worlds(a),
            "b": None if b is None else mask_to_worlds(b),
            "world": x,
        }


def _corr_loop(frame: GeneralFrame, entry: AxiomEntry) -> Optional[Tuple]:
    """First violating (a, b, x) triple in ascending order, or None."""
    p = frame.order
    upc_cache: Dict[int, int] = {}

    def upc(mask: int) -> int:
        got = upc_cache.get(mask)
        if got is None:
            got = up_closure(p, mask)
            upc_cache[mask] = got
        return got

    rel = frame.rel
    pool = frame.admissible
    fn = entry.corr
    quant = entry.quantifier
    if quant == "const":
        return None
    if quant == "x":
        for x in range(p.n):
            if not fn(p, rel, upc, 0, None, x):
                return (p.full_mask, None, x)
        return None
    if quant == "ax":
        for a in pool:
            for x in range(p.n):
                if not fn(p, rel, upc, a, None, x):
                    return (a, None, x)
        return None
    for a in pool:
        for b in pool:
            for x in range(p.n):
                if not fn(p, rel, upc, a, b, x):
                    return (a, b, x)
    return None


def correspondent_holds(frame: GeneralFrame, key: str) -> CorrReport:
    """Evaluate the registered correspondent over the frame's admissible family."""
    entry = AXIOMS[key]
    if not entry.has_correspondent:
        raise MissingCorrespondentError(f"axiom {key!r} has no frame correspondent")
    witness = _corr_loop(frame, entry)
    return CorrReport(key, witness is None, witness)


def _conditions_hold(frame: GeneralFrame, conds: Sequence[Tuple[str, str, Callable]]) -> bool:
    p = frame.order
    upc_cache: Dict[int, int] = {}

    def upc(mask: int) -> int:
        got = upc_cache.get(mask)
        if got is None:
            got = up_closure(p, mask)
            upc_cache[mask] = got
        return got

    rel = frame.rel
    pool = frame.admissible
    for _name, quant, fn in conds:
        if quant == "const":
            continue
        if quant == "x":
            if not all(fn(p, rel, upc, 0, None, x) for x in range(p.n)):
                return False
        elif quant == "ax":
            if not all(fn(p, rel, upc, a, None, x) for a in pool for x in range(p.n)):
                return False
        else:
            for a in pool:
                for b in pool:
                    for x in range(p.n):
                        if not fn(p, rel, upc, a, b, x):
                            return False
    return True


def logic_frame_conditions(preset: str) -> List[Tuple[str, str, Callable]]:
    """Conjunction of correspondents for a named logic.

    The cautious pair ct and cm has no individual correspondents; together
    with id it contributes the joint cautious condition instead.
    """
    keys = list(PRESETS[preset])
    conds: List[Tuple[str, str, Callable]] = []
    if "ct" in keys or "cm" in keys:
        if not {"id", "ct", "cm"} <= set(keys):
            raise MissingCorrespondentError(
                "ct and cm only have a joint correspondent in presence of id"
            )
        keys = [k for k in keys if k not in ("ct", "cm")]
        conds.append(ICC_CORR)
    for k in keys:
        entry = AXIOMS[k]
        if not entry.has_correspondent:
            raise MissingCorrespondentError(
                f"axiom {k!r} in preset {preset!r} has no frame correspondent"
            )
        conds.append((k, entry.quantifier, entry.corr))
    return conds


# --- correspondence verification ---------------------------------------------


def _chunk_ranges(total: int, jobs: int):
    jobs = max(1, min(jobs, total)) if total else 1
    step = (total + jobs - 1) // jobs if total else 0
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)] if total else []


def _verify_sample_range(key: str, seed: int, lo: int, hi: int) -> Tuple[int, List[dict]]:
    entry = AXIOMS[key]
    schema = entry.formula
    discrepancies: List[dict] = []
    for i in range(lo, hi):
        rng = random.Random(f"{seed}:{key}:{i}")
        frame = _sample_frame_for_correspondence(rng, entry)
        _compare(frame, entry, schema, discrepancies)
    return hi - lo, discrepancies


def verify_correspondence(key: str, max_worlds: int = 2, samples: int = 0,
                          seed: int = 0, jobs: int = 1) -> dict:
    """Assert validity-of-schema iff correspondent, exhaustively then sampled.

    Entries with ``strong_scope`` are checked against strongly coherent
    poset frames; all others against every valid full frame.  Sampling
    seeds each index separately, so the report is identical for any job
    count.
    """
    entry = AXIOMS[key]
    if not entry.has_correspondent:
        raise MissingCorrespondentError(f"axiom {key!r} has no frame correspondent")
    schema = entry.formula
    discrepancies: List[dict] = []
    checked_exhaustive = 0
    skipped = 0
    for frame in generate.enumerate_full_frames(max_worlds):
        if entry.strong_scope and not (frame.order.is_poset and strongly_coherent(frame)):
            skipped += 1
            continue
        checked_exhaustive += 1
        _compare(frame, entry, schema, discrepancies)
    checked_sampled = 0
    if jobs > 1 and samples > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(
                _verify_worker,
                [(key, seed, lo, hi) for lo, hi in _chunk_ranges(samples, jobs)],
            )
        for count, part in parts:
            checked_sampled += count
            discrepancies.extend(part)
    else:
        count, part = _verify_sample_range(key, seed, 0, samples)
        checked_sampled = count
        discrepancies.extend(part)
    return {
        "axiom": key,
        "exhaustive_frames": checked_exhaustive,
        "exhaustive_skipped": skipped,
        "sampled_frames": checked_sampled,
        "strong_scope": entry.strong_scope,
        "discrepancies": discrepancies,
        "ok": not discrepancies,
    }


def _verify_worker(args):
    return _verify_sample_range(*args)


def _sample_frame_for_correspondence(rng: random.Random, entry: AxiomEntry):
    n = rng.choice((3, 3, 3, 4, 4, 5, 6))
    # cap the upset count so three-letter validity stays cheap
    while True:
        if rng.random() < 0.5 and entry.key in AXIOM_MODES:
            modes = AXIOM_MODES[entry.key]
        else:
            modes = ("random", "strong_random", "empty")
        frame = generate.random_full_frame(
            rng, n, strong=entry.strong_scope, mode_names=modes
        )
        if len(frame.admissible) <= 12:
            return frame
        n = 3


def _compare(frame, entry, schema, discrepancies):
    corr = _corr_loop(frame, entry) is None
    verdict = valid(frame, schema)
    if corr != verdict.valid:
        discrepancies.append(
            {
                "frame": frame_to_json(frame),
                "valid": verdict.valid,
                "correspondent": corr,
            }
        )


# --- persistence experiments ---------------------------------------------------


def _generate_precondition_frame(rng: random.Random, key: str, kind: FillInKind,
                                 strong: bool, attempts: int = 300) -> Optional[GeneralFrame]:
    """One random valid general frame whose correspondent holds on the
    admissible family (plus the cautious conditions for squeeze)."""
    entry = AXIOMS[key]
    squeeze = kind is FillInKind.SQUEEZE
    modes = AXIOM_MODES.get(key, ("random", "empty"))
    if squeeze:
        modes = tuple(dict.fromkeys(modes + ICC_MODES))
    for _ in range(attempts):
        n = rng.choice((2, 2, 3, 3, 3, 4))
        frame = generate.random_general_frame(
            rng, n, mode_names=modes, force_subset=squeeze, strong=strong
        )
        if _corr_loop(frame, entry) is not None:
            continue
        if squeeze and not check_squeeze_precondition(frame).holds:
            continue
        return frame
    return None


def _persist_sample_range(key: str, kind_name: str, seed: int, strong: bool,
                          expect: str, lo: int, hi: int):
    entry = AXIOMS[key]
    kind = FillInKind.from_name(kind_name)
    passes = 0
    failures = 0
    first = None  # (index, counterexample dict)
    for i in range(lo, hi):
        rng = random.Random(f"{seed}:{key}:{kind.value}:{i}")
        frame = _generate_precondition_frame(rng, key, kind, strong)
        if frame is None:
            raise GenerationBudgetError(
                f"could not generate a frame satisfying the {key!r} precondition"
            )
        filled = fill(frame, kind)
        witness = _corr_loop(filled, entry)
        if witness is None:
            passes += 1
        else:
            failures += 1
            if first is None:
                a, b, x = witness
                first = (
                    i,
                    {
                        "general_frame": frame_to_json(frame),
                        "filled_frame": frame_to_json(filled),
                        "witness": {
                            "a": mask_to_worlds(a),
                            "b": None if b is None else mask_to_worlds(b),
                            "world": x,
                        },
                    },
                )
            if expect == "fail":
                break
    return passes, failures, first


def _persist_worker(args):
    return _persist_sample_range(*args)


def persistence_experiment(key: str, kind: FillInKind, samples: int = 200,
                           seed: int = 0, strong: bool = False,
                           expect: str = "pass", jobs: int = 1) -> dict:
    """Fill precondition-satisfying random general frames and re-check the
    correspondent on the full result.

    For pairs the tables mark persistent the expectation is a 100% pass
    rate; for the refuted pairs the runner reports the first finite
    counterexample frame it finds.
    """
    entry = AXIOMS[key]
    if not entry.has_correspondent:
        raise MissingCorrespondentError(f"axiom {key!r} has no frame correspondent")
    passes = 0
    failures = 0
    first = None
    if jobs > 1 and samples > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(
                _persist_worker,
                [
                    (key, kind.value, seed, strong, expect, lo, hi)
                    for lo, hi in _chunk_ranges(samples, jobs)
                ],
            )
        for p, f, fst in parts:
            passes += p
            failures += f
            if fst is not None and (first is None or fst[0] < first[0]):
                first = fst
    else:
        passes, failures, first = _persist_sample_range(
            key, kind.value, seed, strong, expect, 0, samples
        )
    total = passes + failures
    report = {
        "axiom": key,
        "fillin": kind.value,
        "samples": total,
        "passes": passes,
        "failures": failures,
        "pass_rate": passes / total if total else None,
        "expect": expect,
        "strong": strong,
        "counterexample": None if first is None else first[1],
    }
    report["ok"] = (failures == 0) if expect == "pass" else (failures > 0)
    return report


# --- countermodel search ---------------------------------------------------------


@dataclass
class SearchResult:
    found: bool
    frame: Optional[GeneralFrame] = None
    valuation: Optional[dict] = None
    world: Optional[int] = None
    frames_checked: int = 0
    frames_matching: int = 0


def search_countermodel(preset: str, target: Formula, max_worlds: int = 2,
                        samples: int = 500, seed: int = 0) -> SearchResult:
    """Find a frame meeting the preset's conditions that refutes the target.

    Exhausts all frames with at most two worlds in canonical order, then
    falls back to seeded random frames up to ``max_worlds``.  Exhaustion is
    inconclusive, never a derivability claim.
    """
    conds = logic_frame_conditions(preset)
    checked = 0
    matching = 0
    for frame in generate.enumerate_full_frames(min(2, max_worlds)):
        checked += 1
        if not _conditions_hold(frame, conds):
            continue
        matching += 1
        verdict = valid(frame, target)
        if not verdict.valid:
            return SearchResult(True, frame, verdict.valuation, verdict.world,
                                checked, matching)
    if max_worlds > 2:
        for i in range(samples):
            rng = random.Random(f"{seed}:search:{i}")
            n = 3 + (i % (max_worlds - 2))
            frame = generate.random_full_frame(rng, n)
            checked += 1
            if not _conditions_hold(frame, conds):
                continue
            matching += 1
            verdict = valid(frame, target)
            if not verdict.valid:
                return SearchResult(True, frame, verdict.valuation, verdict.world,
                                    checked, matching)
    return SearchResult(False, frames_checked=checked, frames_matching=matching)
