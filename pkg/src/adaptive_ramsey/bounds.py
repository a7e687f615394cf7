"""Upper-bound propagation for R_n(3).

Two routes give upper bounds beyond a known anchor R_k(3) <= u:

* the recursion R_n(3) <= n (R_{n-1}(3) - 1) + 2, applied step by step;
* the adaptive closed form f(n) = floor(n! (e - q)) + 1 with q = a/k! and
  a = floor(k! e) - u + 1.

They agree exactly for every n >= k, which the test-suite checks as an
equality of trajectories.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Iterable, Mapping

from .errors import DomainError, FormatError
from .exact_arith import as_natural, floor_factorial_e, floor_scaled

__all__ = [
    "KnowledgeBaseEntry",
    "KnowledgeBase",
    "AdaptiveBound",
    "Candidate",
    "BoundTableRow",
    "gg_step",
    "adaptive_from_anchor",
    "closed_form_bound",
    "propagate_recursive",
    "trajectories_agree",
    "check_optimality_remark",
    "normalize_kb",
    "best_bounds_table",
    "schur_upper",
    "default_kb",
    "parse_kb",
    "load_kb",
    "apply_assumption",
]

TRIVIAL_LOWER = 3


@dataclass(frozen=True)
class KnowledgeBaseEntry:
    n: int
    lower: int
    upper: int
    provenance: str
    derived: bool = False

    def __post_init__(self):
        as_natural(self.n, "n")
        if self.n < 1:
            raise DomainError("color count must be >= 1")
        as_natural(self.lower, "lower")
        as_natural(self.upper, "upper")
        if self.lower < TRIVIAL_LOWER:
            raise DomainError(f"R_{self.n}(3) >= 3, got lower={self.lower}")
        if self.lower > self.upper:
            raise DomainError(f"lower {self.lower} exceeds upper {self.upper} for n={self.n}")


@dataclass(frozen=True)
class KnowledgeBase:
    """Immutable mapping n -> entry. Overlays return new instances."""

    entries: Mapping[int, KnowledgeBaseEntry] = field(default_factory=dict)

    def __post_init__(self):
        entries = dict(sorted(self.entries.items()))
        for n, entry in entries.items():
            if entry.n != n:
                raise DomainError(f"entry for n={entry.n} filed under key {n}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_entries(cls, entries: Iterable[KnowledgeBaseEntry]):
        table = {}
        for e in entries:
            if e.n in table:
                raise DomainError(f"duplicate entry for n={e.n}")
            table[e.n] = e
        return cls(table)

    def __contains__(self, n):
        return n in self.entries

    def __getitem__(self, n):
        return self.entries[n]

    def __iter__(self):
        return iter(self.entries.values())

    def __len__(self):
        return len(self.entries)

    def upper(self, n):
        return self.entries[n].upper

    def lower(self, n):
        return self.entries[n].lower

    def anchors(self):
        """Stored (non-derived) entries usable as anchors, i.e. with k >= 2."""
        return [e for e in self if e.n >= 2 and not e.derived]

    def with_entry(self, entry):
        entries = dict(self.entries)
        entries[entry.n] = entry
        return KnowledgeBase(entries)


@dataclass(frozen=True)
class AdaptiveBound:
    """Anchor data (k, a, q = a/k!) for f(n) = floor(n!(e - q)) + 1, n >= k."""

    k: int
    a: int
    q: Fraction

    def __post_init__(self):
        as_natural(self.k, "k")
        as_natural(self.a, "a")
        if self.k < 2:
            raise DomainError("anchors need k >= 2")
        if Fraction(self.q) != Fraction(self.a, math.factorial(self.k)):
            raise DomainError(f"q must equal a/k! = {self.a}/{self.k}!")
        object.__setattr__(self, "q", Fraction(self.q))

    @classmethod
    def from_a(cls, k, a):
        return cls(k, a, Fraction(a, math.factorial(k)))

    def __call__(self, n):
        return closed_form_bound(self, n)

    def describe(self):
        return f"k={self.k}, a={self.a}, q={self.q}"


def gg_step(n, prev_upper):
    """One application of R_n(3) <= n (R_{n-1}(3) - 1) + 2."""
    as_natural(n, "n")
    as_natural(prev_upper, "prev_upper")
    if n < 2:
        raise DomainError("recursion applies for n >= 2")
    if prev_upper < TRIVIAL_LOWER:
        raise DomainError("an upper bound on R_{n-1}(3) is at least 3")
    return n * (prev_upper - 1) + 2


def adaptive_from_anchor(k, upper_k):
    """Largest admissible a = floor(k! e) - upper_k + 1 and q = a/k!."""
    as_natural(k, "k")
    as_natural(upper_k, "upper_k")
    if k < 2:
        raise DomainError("anchors need k >= 2")
    a = floor_factorial_e(k) - upper_k + 1
    if a < 0:
        raise DomainError(
            f"anchor weaker than the unconditional floor({k}!e)+1 = "
            f"{floor_factorial_e(k) + 1} bound"
        )
    return AdaptiveBound.from_a(k, a)


def closed_form_bound(bound, n):
    as_natural(n, "n")
    if n < bound.k:
        raise DomainError(f"bound only valid for n >= k = {bound.k}")
    # floor_scaled re-checks that n! q is integral
    return floor_scaled(n, bound.q) + 1


def propagate_recursive(k, upper_k, n):
    as_natural(k, "k")
    as_natural(n, "n")
    if k < 2:
        raise DomainError("anchors need k >= 2")
    if n < k:
        raise DomainError(f"cannot propagate downward from k={k} to n={n}")
    value = upper_k
    for m in range(k + 1, n + 1):
        value = gg_step(m, value)
    return value


def trajectories_agree(k, upper_k, max_n):
    """True iff the closed form and the iterated recursion coincide for k <= n <= max_n."""
    bound = adaptive_from_anchor(k, upper_k)
    value = upper_k
    for n in range(k, max_n + 1):
        if n > k:
            value = gg_step(n, value)
        if closed_form_bound(bound, n) != value:
            return False
    return True


def check_optimality_remark(k, upper_k):
    """True iff raising a by one makes the closed form fail at n = k.

    With a' = floor(k! e) - upper_k + 2 the closed form gives upper_k - 1,
    which no longer bounds a Ramsey number whose best estimate is upper_k.
    """
    adaptive_from_anchor(k, upper_k)  # precondition check
    a_prime = floor_factorial_e(k) - upper_k + 2
    q_prime = Fraction(a_prime, math.factorial(k))
    f_prime = floor_scaled(k, q_prime) + 1
    return f_prime == upper_k - 1 and f_prime < upper_k


def normalize_kb(kb, max_n):
    """Close ``kb`` under the recursion up to ``max_n``.

    Upper bounds become min(stored, recursion from n-1). Lower bounds are
    kept as stored; new entries get the trivial lower bound 3.
    """
    as_natural(max_n, "max_n")
    if not kb.entries:
        raise DomainError("cannot normalize an empty knowledge base")
    start = min(kb.entries)
    stop = max(max_n, max(kb.entries))
    out = {}
    prev = None
    for n in range(start, stop + 1):
        stored = kb.entries.get(n)
        rec = gg_step(n, prev.upper) if prev is not None and n >= 2 else None
        if stored is None:
            if rec is None:
                continue
            entry = KnowledgeBaseEntry(
                n, TRIVIAL_LOWER, rec, f"recursion from n={n - 1}", derived=True
            )
        elif rec is not None and rec < stored.upper:
            if rec < stored.lower:
                raise DomainError(
                    f"recursion gives R_{n}(3) <= {rec}, below stored lower {stored.lower}"
                )
            entry = KnowledgeBaseEntry(
                n, stored.lower, rec,
                f"{stored.provenance}; upper tightened by recursion from n={n - 1}",
                derived=stored.derived,
            )
        else:
            entry = stored
        out[n] = entry
        prev = entry
    return KnowledgeBase(out)


def apply_assumption(kb, k, upper, provenance=None):
    """Overlay R_k(3) <= upper. Returns (new_kb, applied).

    The overlay only applies if it strengthens the current (recursion-closed)
    upper bound at k; otherwise ``kb`` is returned unchanged.
    """
    as_natural(k, "k")
    as_natural(upper, "upper")
    if k < 2:
        raise DomainError("assumptions reference k >= 2")
    closed = normalize_kb(kb, k)
    current = closed.entries.get(k)
    if current is not None and upper >= current.upper:
        return kb, False
    lower = kb.entries[k].lower if k in kb else TRIVIAL_LOWER
    if upper < lower:
        raise DomainError(f"assumption R_{k}(3) <= {upper} contradicts lower bound {lower}")
    adaptive_from_anchor(k, upper)  # rejects anchors weaker than floor(k!e)+1
    tag = provenance or f"assumption R_{k}(3) <= {upper}"
    return kb.with_entry(KnowledgeBaseEntry(k, lower, upper, tag)), True


@dataclass(frozen=True)
class Candidate:
    """One way of bounding R_n(3): a closed form from an anchor, the
    recursion from the previous row, or a stored value with no anchor."""

    rule: str  # "closed-form", "recursion" or "stored"
    value: int
    anchor: AdaptiveBound | None = None

    def describe(self):
        if self.rule == "closed-form":
            return f"closed form from anchor {self.anchor.describe()}"
        return self.rule


@dataclass(frozen=True)
class BoundTableRow:
    n: int
    lower: int
    best_upper: int
    winner: Candidate
    all_candidates: tuple

    @property
    def winning_anchor(self):
        return self.winner.anchor

    def to_record(self):
        anchor = self.winner.anchor
        return {
            "n": self.n,
            "lower": self.lower,
            "upper": self.best_upper,
            "anchor_k": anchor.k if anchor else None,
            "a": anchor.a if anchor else None,
            "q_num": anchor.q.numerator if anchor else None,
            "q_den": anchor.q.denominator if anchor else None,
        }


_RULE_ORDER = {"closed-form": 0, "recursion": 1, "stored": 2}


def best_bounds_table(kb, max_n):
    """Best upper bound for each n <= max_n covered by the normalized kb.

    Ties go to the smallest anchor k, then closed form before recursion.
    """
    as_natural(max_n, "max_n")
    anchors = kb.anchors()
    if anchors and max_n < max(e.n for e in anchors):
        raise DomainError("max_n must reach the largest anchor")
    closed = normalize_kb(kb, max_n)
    adaptive = [adaptive_from_anchor(e.n, e.upper) for e in anchors]
    rows = []
    prev_best = None
    for n in range(1, max_n + 1):
        if n not in closed:
            prev_best = None
            continue
        candidates = [Candidate("closed-form", b(n), b) for b in adaptive if b.k <= n]
        if prev_best is not None and n >= 2:
            candidates.append(Candidate("recursion", gg_step(n, prev_best)))
        if not candidates:
            candidates.append(Candidate("stored", closed.upper(n)))
        winner = min(
            candidates,
            key=lambda c: (c.value, c.anchor.k if c.anchor else math.inf, _RULE_ORDER[c.rule]),
        )
        rows.append(
            BoundTableRow(n, closed.lower(n), winner.value, winner, tuple(candidates))
        )
        prev_best = winner.value
    return rows


def schur_upper(n, kb):
    """min(R_n(3) upper - 2, floor(n! e) - 1) for n >= 2."""
    as_natural(n, "n")
    if n < 2:
        raise DomainError("Schur's bound is stated for n >= 2")
    if n not in kb:
        raise DomainError(f"knowledge base has no upper bound for n={n}; normalize first")
    return min(kb.upper(n) - 2, floor_factorial_e(n) - 1)


def parse_kb(text, source="<string>"):
    """Parse ``n lower upper provenance...`` records; ``#`` starts a comment."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 3)
        if len(parts) < 3:
            raise FormatError(f"{source}: expected 'n lower upper provenance'", lineno)
        try:
            n, lower, upper = (int(p) for p in parts[:3])
        except ValueError:
            raise FormatError(f"{source}: n, lower and upper must be integers", lineno) from None
        if n in entries:
            raise FormatError(f"{source}: duplicate entry for n={n}", lineno)
        provenance = parts[3].strip() if len(parts) > 3 else "unspecified"
        try:
            entries[n] = KnowledgeBaseEntry(n, lower, upper, provenance)
        except DomainError as exc:
            raise FormatError(f"{source}: {exc}", lineno) from None
    if not entries:
        raise FormatError(f"{source}: no records")
    return KnowledgeBase(entries)


def load_kb(path):
    with open(path, encoding="utf-8") as fh:
        return parse_kb(fh.read(), source=str(path))


def default_kb():
    text = resources.files(__package__).joinpath("data/default_kb.txt").read_text("utf-8")
    return parse_kb(text, source="default_kb.txt")
