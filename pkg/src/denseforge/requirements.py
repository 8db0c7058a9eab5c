"""Decidable dense (and deliberately non-dense) sets of words and word pairs.

A requirement is an immutable set description with a total membership test.
Dense kinds additionally carry a deterministic density witness: for any word
(pair) they return an extension inside the set, chosen by minimal added
length and then shortlex (pair-shortlex for pairs), the one tie-breaking
convention used everywhere in this package.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import FrozenSet, Iterator, Optional, Tuple, Union

from .limits import WidthBudget
from .words import ALPHABET, is_prefix, shortlex_key, words_of_length


class DensityFailure(Exception):
    """A witness was requested from a set with no extension of the input."""

    def __init__(self, requirement: str, stuck):
        self.requirement = requirement
        self.stuck = stuck
        super().__init__(f"no extension of {stuck!r} lies in {requirement}")


@dataclass(frozen=True)
class DensityResult:
    """Outcome of an exhaustive density check; falsy iff a counterexample exists."""

    ok: bool
    counterexample: Optional[object] = None

    def __bool__(self) -> bool:
        return self.ok


def _suffixes(length: int) -> Iterator[str]:
    for bits in product(ALPHABET, repeat=length):
        yield "".join(bits)


# ---------------------------------------------------------------------------
# Single-word requirements
# ---------------------------------------------------------------------------


class SingleRequirement:
    kind = "single"
    dense = True

    def member(self, w: str) -> bool:
        raise NotImplementedError

    def meets(self, w: str) -> bool:
        """Some prefix of *w* (including epsilon and *w*) is a member."""
        return any(self.member(w[:i]) for i in range(len(w) + 1))

    def no_extension_in(self, prefix: str) -> bool:
        """True iff no extension of *prefix* is a member."""
        raise NotImplementedError

    def witness(self, sigma: str) -> str:
        """Deterministic extension of *sigma* inside the set."""
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return self.describe()


@dataclass(frozen=True, repr=False)
class Contains(SingleRequirement):
    """All words with a fixed word as a (contiguous) substring."""

    word: str
    kind = "contains"

    def member(self, w: str) -> bool:
        return self.word in w

    def meets(self, w: str) -> bool:
        return self.word in w

    def no_extension_in(self, prefix: str) -> bool:
        # every word extends into the set by appending self.word
        return False

    def witness(self, sigma: str) -> str:
        # append rule; already-member inputs witness themselves
        if self.word in sigma:
            return sigma
        return sigma + self.word

    def describe(self) -> str:
        return f"contains({self.word})"


@dataclass(frozen=True, repr=False)
class FiniteMeetOrAvoid(SingleRequirement):
    """The dense set derived from a finite set A: words in A, or with no
    extension in A. Meeting it decides A."""

    words: FrozenSet[str]
    kind = "finite_meet_or_avoid"

    def member(self, w: str) -> bool:
        if w in self.words:
            return True
        return not any(is_prefix(w, a) for a in self.words)

    def no_extension_in(self, prefix: str) -> bool:
        return False  # dense: long enough extensions always lie past A

    def witness(self, sigma: str) -> str:
        max_len = max((len(a) for a in self.words), default=0)
        bound = max(0, max_len + 1 - len(sigma))
        budget = WidthBudget(self.describe())
        for added in range(bound + 1):
            for s in _suffixes(added):
                budget.spend()
                if self.member(sigma + s):
                    return sigma + s
        raise DensityFailure(self.describe(), sigma)  # unreachable: set is dense

    def describe(self) -> str:
        inner = ",".join(sorted(self.words, key=shortlex_key))
        return f"finite_meet_or_avoid({{{inner}}})"


def derive_meet_or_avoid(words) -> FiniteMeetOrAvoid:
    """The meet-or-avoid set of a finite set of words; dense for every input."""
    return FiniteMeetOrAvoid(frozenset(words))


@dataclass(frozen=True, repr=False)
class ExactSet(SingleRequirement):
    """A finite set, verbatim. Usually not dense; exists to exercise the
    density checker's negative path."""

    words: FrozenSet[str]
    kind = "exact_set"
    dense = False

    def member(self, w: str) -> bool:
        return w in self.words

    def no_extension_in(self, prefix: str) -> bool:
        return not any(is_prefix(prefix, a) for a in self.words)

    def witness(self, sigma: str) -> str:
        hits = [a for a in self.words if is_prefix(sigma, a)]
        if not hits:
            raise DensityFailure(self.describe(), sigma)
        return min(hits, key=shortlex_key)

    def describe(self) -> str:
        inner = ",".join(sorted(self.words, key=shortlex_key))
        return f"exact_set({{{inner}}})"


@dataclass(frozen=True, repr=False, eq=False)
class FBlock(SingleRequirement):
    """Words that end, at some block boundary k_m > level, with the suffix
    g2(k_m). Dense once the schedule climbs past the level."""

    level: int
    schedule: object = field(compare=False)  # has .k(m)
    gadget: object = field(compare=False)  # has .g2(n)
    kind = "f_block"

    def _boundaries(self, up_to_len: int) -> Iterator[Tuple[int, int]]:
        """Pairs (k_m, k_m + |g2(k_m)|) with k_m <= up_to_len, m ascending."""
        m = 0
        while True:
            km = self.schedule.k(m)
            if km > up_to_len:
                return
            yield km, km + len(self.gadget.g2(km))
            m += 1

    def member(self, w: str) -> bool:
        for km, p in self._boundaries(len(w)):
            if km > self.level and p == len(w) and w[km:] == self.gadget.g2(km):
                return True
        return False

    def meets(self, w: str) -> bool:
        for km, p in self._boundaries(len(w)):
            if km > self.level and p <= len(w) and w[km:p] == self.gadget.g2(km):
                return True
        return False

    def no_extension_in(self, prefix: str) -> bool:
        return False

    def witness(self, sigma: str) -> str:
        floor = max(self.level, len(sigma))
        m = 0
        while self.schedule.k(m) <= floor:
            m += 1
        km = self.schedule.k(m)
        return sigma + "0" * (km - len(sigma)) + self.gadget.g2(km)

    def describe(self) -> str:
        return f"f_block(level={self.level})"


def meets_single(w: str, req: SingleRequirement) -> bool:
    """True iff some prefix of *w* is a member of *req*."""
    return req.meets(w)


def avoids_single(w: str, req: SingleRequirement) -> bool:
    """True iff some prefix of *w* has no extension inside *req*."""
    return any(req.no_extension_in(w[:i]) for i in range(len(w) + 1))


def witness_single(req: SingleRequirement, sigma: str) -> str:
    return req.witness(sigma)


# ---------------------------------------------------------------------------
# Pair requirements
# ---------------------------------------------------------------------------


class PairRequirement:
    kind = "pair"
    dense = True

    def member(self, u: str, v: str) -> bool:
        raise NotImplementedError

    def meets(self, u: str, v: str) -> bool:
        """Some pair of coordinate prefixes is a member."""
        return any(
            self.member(u[:i], v[:j])
            for i in range(len(u) + 1)
            for j in range(len(v) + 1)
        )

    def witness(self, sigma: str, tau: str) -> Tuple[str, str]:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return self.describe()


def _search_pair_witness(req, sigma, tau, bound) -> Tuple[str, str]:
    """Minimal-total-added-length, then pair-shortlex, member extension."""
    budget = WidthBudget(req.describe())
    for total in range(bound + 1):
        for l1 in range(total + 1):
            l2 = total - l1
            for s1 in _suffixes(l1):
                for s2 in _suffixes(l2):
                    budget.spend()
                    if req.member(sigma + s1, tau + s2):
                        return sigma + s1, tau + s2
    raise DensityFailure(req.describe(), (sigma, tau))


@dataclass(frozen=True, repr=False)
class PairContains(PairRequirement):
    """Pairs whose left word contains one fixed substring and whose right
    word contains another."""

    left: str
    right: str
    kind = "pair_contains"

    def member(self, u: str, v: str) -> bool:
        return self.left in u and self.right in v

    def meets(self, u: str, v: str) -> bool:
        # substring containment is monotone under extension of each prefix
        return self.left in u and self.right in v

    def witness(self, sigma: str, tau: str) -> Tuple[str, str]:
        return _search_pair_witness(self, sigma, tau, len(self.left) + len(self.right))

    def describe(self) -> str:
        return f"pair_contains({self.left},{self.right})"


@dataclass(frozen=True, repr=False)
class PairMeetOrAvoid(PairRequirement):
    """The meet-or-avoid set derived from a finite set of word pairs."""

    pairs: FrozenSet[Tuple[str, str]]
    kind = "pair_finite_meet_or_avoid"

    def member(self, u: str, v: str) -> bool:
        if (u, v) in self.pairs:
            return True
        return not any(is_prefix(u, a) and is_prefix(v, b) for a, b in self.pairs)

    def witness(self, sigma: str, tau: str) -> Tuple[str, str]:
        max_left = max((len(a) for a, _ in self.pairs), default=0)
        bound = max(0, max_left + 1 - len(sigma))
        return _search_pair_witness(self, sigma, tau, bound)

    def describe(self) -> str:
        inner = ",".join(
            f"({a},{b})" for a, b in sorted(self.pairs, key=lambda p: (shortlex_key(p[0]), shortlex_key(p[1])))
        )
        return f"pair_finite_meet_or_avoid({{{inner}}})"


@dataclass(frozen=True, repr=False)
class PairExactSet(PairRequirement):
    """A finite set of pairs, verbatim; usually not dense."""

    pairs: FrozenSet[Tuple[str, str]]
    kind = "pair_exact_set"
    dense = False

    def member(self, u: str, v: str) -> bool:
        return (u, v) in self.pairs

    def witness(self, sigma: str, tau: str) -> Tuple[str, str]:
        hits = [
            (a, b)
            for a, b in self.pairs
            if is_prefix(sigma, a) and is_prefix(tau, b)
        ]
        if not hits:
            raise DensityFailure(self.describe(), (sigma, tau))
        return min(
            hits,
            key=lambda p: (len(p[0]) + len(p[1]), shortlex_key(p[0]), shortlex_key(p[1])),
        )

    def describe(self) -> str:
        inner = ",".join(
            f"({a},{b})" for a, b in sorted(self.pairs, key=lambda p: (shortlex_key(p[0]), shortlex_key(p[1])))
        )
        return f"pair_exact_set({{{inner}}})"


def meets_pair(u: str, v: str, req: PairRequirement) -> bool:
    """True iff some pair of prefixes of (u, v) is a member of *req*."""
    return req.meets(u, v)


def witness_pair(req: PairRequirement, sigma: str, tau: str) -> Tuple[str, str]:
    return req.witness(sigma, tau)


# ---------------------------------------------------------------------------
# Density checking
# ---------------------------------------------------------------------------

AnyRequirement = Union[SingleRequirement, PairRequirement]


def check_density(req: AnyRequirement, depth: int) -> DensityResult:
    """Exhaustively verify the density property up to *depth*.

    For every word (pair of words) of length <= depth, the witness must
    succeed, extend the input, and land inside the set. The first failure is
    reported as the counterexample.
    """
    if depth < 0:
        raise ValueError(f"depth must be non-negative, got {depth}")
    if isinstance(req, PairRequirement):
        for n1 in range(depth + 1):
            for u in words_of_length(n1):
                for n2 in range(depth + 1):
                    for v in words_of_length(n2):
                        try:
                            a, b = req.witness(u, v)
                        except DensityFailure:
                            return DensityResult(False, (u, v))
                        if not (is_prefix(u, a) and is_prefix(v, b) and req.member(a, b)):
                            return DensityResult(False, (u, v))
        return DensityResult(True)
    for n in range(depth + 1):
        for w in words_of_length(n):
            try:
                t = req.witness(w)
            except DensityFailure:
                return DensityResult(False, w)
            if not (is_prefix(w, t) and req.member(t)):
                return DensityResult(False, w)
    return DensityResult(True)
