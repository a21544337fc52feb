"""Model checking and validity over finite frames.

Truth sets are computed world-recursively from the semantic clauses; the
conditional clause reads the relation indexed by the antecedent's truth
set.  Validity enumerates valuations only over the letters occurring in
the formula (equivalent to quantifying over all of them, by uniform
substitution), in lexicographic order of (letter, upset encoding), so the
reported countermodel is deterministic.

Formulas are compiled once into a flat post-order program with shared
subterms deduplicated; the validity loops then evaluate the program per
valuation without touching the AST.  Implication and conditional results
are memoised per frame, keyed by operand masks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Tuple

from .errors import BudgetExceededError, LanguageError, NotAdmissibleError
from .frames import GeneralFrame, ModalFrame
from .order import (
    FinitePreorder,
    all_upsets,
    heyting_imp,
    is_upset,
    mask_to_key,
    mask_to_worlds,
    worlds_to_mask,
)
from .syntax import Formula, Language, proposition_letters

DEFAULT_BUDGET = 10_000_000

Valuation = Dict[str, int]


@dataclass
class Verdict:
    valid: bool
    valuation: Optional[Valuation] = None
    world: Optional[int] = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.valid


@lru_cache(maxsize=8192)
def compile_formula(f: Formula) -> Tuple[Tuple[str, ...], Tuple, Tuple[int, ...]]:
    """Flatten to (letters, program, var slots); shared subterms appear once.

    The program is a tuple of (op, left_slot, right_slot) triples writing
    into consecutive slots; variable slots come first, in sorted letter
    order, then a slot for bot.
    """
    letters = tuple(sorted(proposition_letters(f)))
    slot_of_letter = {name: i for i, name in enumerate(letters)}
    bot_slot = len(letters)
    program = []
    memo: Dict[int, int] = {}

    def emit(node: Formula) -> int:
        got = memo.get(id(node))
        if got is not None:
            return got
        if node.op == "var":
            slot = slot_of_letter[node.name]
        elif node.op == "bot":
            slot = bot_slot
        elif len(node.args) == 1:
            arg = emit(node.args[0])
            slot = bot_slot + 1 + len(program)
            program.append((node.op, arg, arg))
        else:
            left = emit(node.args[0])
            right = emit(node.args[1])
            slot = bot_slot + 1 + len(program)
            program.append((node.op, left, right))
        memo[id(node)] = slot
        return slot

    result_slot = emit(f)
    return letters, tuple(program), (bot_slot, result_slot)


def _check_valuation(order: FinitePreorder, v: Valuation, letters, admissible=None):
    for name in letters:
        if name not in v:
            raise NotAdmissibleError(f"valuation does not define letter {name!r}")
    for name, mask in v.items():
        if not is_upset(order, mask):
            raise NotAdmissibleError(f"valuation of {name!r} is not an upset")
        if admissible is not None and mask not in admissible:
            raise NotAdmissibleError(
                f"valuation of {name!r} = {{{mask_to_key(mask)}}} is not admissible"
            )


def _imp_cached(frame: GeneralFrame, a: int, b: int) -> int:
    cache = frame._dto_cache
    key = ("imp", a, b)
    got = cache.get(key)
    if got is None:
        got = heyting_imp(frame.order, a, b)
        cache[key] = got
    return got


def _run_program(frame: GeneralFrame, program, slots, values) -> int:
    """Evaluate a compiled conditional-language program over one valuation."""
    bot_slot, result_slot = slots
    buf = list(values)
    buf.append(0)  # bot
    for op, left, right in program:
        a = buf[left]
        b = buf[right]
        if op == "and":
            buf.append(a & b)
        elif op == "or":
            buf.append(a | b)
        elif op == "imp":
            buf.append(_imp_cached(frame, a, b))
        else:  # cond
            buf.append(frame.dto(a, b))
    return buf[result_slot]


def truth_set(frame: GeneralFrame, valuation: Valuation, f: Formula) -> int:
    """The set of worlds satisfying ``f``; always an upset.

    For non-full frames the valuation must be admissible, which by the
    closure properties of the admissible family keeps every intermediate
    truth set admissible as well.
    """
    if f.language is not Language.COND:
        raise LanguageError("conditional frames interpret the conditional language only")
    letters, program, slots = compile_formula(f)
    admissible = None if frame.is_full else set(frame.admissible)
    _check_valuation(frame.order, valuation, letters, admissible)
    values = [valuation[name] for name in letters]
    return _run_program(frame, program, slots, values)


def check(frame: GeneralFrame, valuation: Valuation, f: Formula, world: int) -> bool:
    if not 0 <= world < frame.n:
        raise NotAdmissibleError(f"world {world} out of range")
    return bool((truth_set(frame, valuation, f) >> world) & 1)


def valid(frame: GeneralFrame, f: Formula, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Exhaustive validity over admissible valuations (all upsets when full).

    Returns the first countermodel in enumeration order, or a valid verdict.
    """
    if f.language is not Language.COND:
        raise LanguageError("conditional frames interpret the conditional language only")
    letters, program, slots = compile_formula(f)
    pool = frame.admissible
    required = len(pool) ** len(letters) * frame.n
    if required > budget:
        raise BudgetExceededError(required, budget)
    full = frame.order.full_mask
    checked = 0
    for values in itertools.product(pool, repeat=len(letters)):
        ts = _run_program(frame, program, slots, values)
        checked += frame.n
        if ts != full:
            world = _first_missing(ts, frame.n)
            return Verdict(False, dict(zip(letters, values)), world, checked)
    return Verdict(True, None, None, checked)


def _first_missing(mask: int, n: int) -> int:
    for w in range(n):
        if not (mask >> w) & 1:
            return w
    raise AssertionError("mask was full")


# --- the unimodal language over modal frames ------------------------------


def _box_set(frame: ModalFrame, arg: int) -> int:
    out = 0
    for x in range(frame.order.n):
        if not frame.rel[x] & ~arg:
            out |= 1 << x
    return out


def _run_modal(frame: ModalFrame, program, slots, values, imp_cache: dict) -> int:
    bot_slot, result_slot = slots
    buf = list(values)
    buf.append(0)
    for op, left, right in program:
        a = buf[left]
        b = buf[right]
        if op == "and":
            buf.append(a & b)
        elif op == "or":
            buf.append(a | b)
        elif op == "imp":
            key = (a, b)
            got = imp_cache.get(key)
            if got is None:
                got = heyting_imp(frame.order, a, b)
                imp_cache[key] = got
            buf.append(got)
        elif op == "box":
            buf.append(_box_set(frame, a))
        else:
            raise LanguageError(f"connective {op!r} has no modal-frame interpretation")
    return buf[result_slot]


def truth_set_modal(frame: ModalFrame, valuation: Valuation, f: Formula) -> int:
    if f.language is not Language.MODAL:
        raise LanguageError("modal frames interpret the box language only")
    letters, program, slots = compile_formula(f)
    _check_valuation(frame.order, valuation, letters)
    values = [valuation[name] for name in letters]
    return _run_modal(frame, program, slots, values, {})


def check_modal(frame: ModalFrame, valuation: Valuation, f: Formula, world: int) -> bool:
    if not 0 <= world < frame.order.n:
        raise NotAdmissibleError(f"world {world} out of range")
    return bool((truth_set_modal(frame, valuation, f) >> world) & 1)


def valid_modal(frame: ModalFrame, f: Formula, budget: int = DEFAULT_BUDGET) -> Verdict:
    if f.language is not Language.MODAL:
        raise LanguageError("modal frames interpret the box language only")
    letters, program, slots = compile_formula(f)
    pool = all_upsets(frame.order)
    required = len(pool) ** len(letters) * frame.order.n
    if required > budget:
        raise BudgetExceededError(required, budget)
    full = frame.order.full_mask
    checked = 0
    imp_cache: dict = {}
    for values in itertools.product(pool, repeat=len(letters)):
        ts = _run_modal(frame, program, slots, values, imp_cache)
        checked += frame.order.n
        if ts != full:
            return Verdict(False, dict(zip(letters, values)),
                           _first_missing(ts, frame.order.n), checked)
    return Verdict(True, None, None, checked)


# --- valuation file format -------------------------------------------------
#
# { "<letter>": [w, ...], ... }


def valuation_to_json(v: Valuation) -> dict:
    return {name: mask_to_worlds(mask) for name, mask in sorted(v.items())}


def valuation_from_json(obj: dict, frame: GeneralFrame) -> Valuation:
    """Load a valuation, validating upsets (and admissibility on general frames)."""
    v = {}
    for name, worlds in obj.items():
        mask = worlds_to_mask(int(w) for w in worlds)
        if mask & ~frame.order.full_mask:
            raise NotAdmissibleError(f"valuation of {name!r} mentions unknown worlds")
        v[name] = mask
    admissible = None if frame.is_full else set(frame.admissible)
    _check_valuation(frame.order, v, (), admissible)
    return v
