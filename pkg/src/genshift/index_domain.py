"""Index sets and total self-maps with exact preimage structure.

Everything downstream (norms, classification, domain analysis) reduces to
questions about fibers, the preimage sets of single indices. Maps therefore
carry an exact fiber oracle: finite maps answer by scanning their image
table, while symbolic maps on the unbounded index set {1, 2, ...} ship
closed-form fiber enumeration plus optional self-certificates (global fiber
bound, injectivity, surjectivity). A rule without certificates can still be
analysed, but only on finite windows.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import ConstructionError, DomainError, IntegrityError, ParseError

DEFAULT_WINDOW = 64


@dataclass(frozen=True)
class FiberCard:
    """Cardinality of a fiber: a non-negative integer, or infinite (count=None)."""

    count: int | None

    def __post_init__(self):
        if self.count is not None and self.count < 0:
            raise ConstructionError(f"negative cardinality {self.count}")

    @property
    def is_infinite(self) -> bool:
        return self.count is None

    def as_float(self) -> float:
        return math.inf if self.count is None else float(self.count)

    def weight(self, mag_sq: float) -> float:
        """Product against a squared magnitude, using 0 * inf = inf * 0 = 0."""
        if mag_sq == 0.0:
            return 0.0
        if self.count is None:
            return math.inf
        return self.count * mag_sq


INFINITE = FiberCard(None)


def sup_card(cards: Iterable[FiberCard]) -> FiberCard:
    """Largest of finitely many fiber cardinalities; infinite dominates."""
    best = 0
    for c in cards:
        if c.count is None:
            return INFINITE
        if c.count > best:
            best = c.count
    return FiberCard(best)


@dataclass(frozen=True)
class IndexSet:
    """The index set {1, ..., size}, or all positive integers when size is None."""

    size: int | None = None

    def __post_init__(self):
        if self.size is not None and self.size < 2:
            raise ConstructionError(f"finite index set must have size >= 2, got {self.size}")

    @classmethod
    def finite(cls, n: int) -> "IndexSet":
        return cls(n)

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    def __contains__(self, alpha: object) -> bool:
        if not isinstance(alpha, int) or isinstance(alpha, bool):
            return False
        return alpha >= 1 and (self.size is None or alpha <= self.size)

    def indices(self) -> range:
        if self.size is None:
            raise DomainError("cannot enumerate the unbounded index set")
        return range(1, self.size + 1)


COUNTABLE = IndexSet()


@dataclass(frozen=True)
class Fiber:
    """A preimage set: exact cardinality plus the member set when finite."""

    card: FiberCard
    members: frozenset[int] | None  # None exactly when the fiber is infinite


@dataclass(frozen=True)
class SymbolicRule:
    """A self-map of the positive integers with closed-form fiber structure.

    ``card_fn`` and ``members_fn`` must be exact: ``members_fn(a)`` is None
    exactly when the fiber over ``a`` is infinite, otherwise the complete
    preimage set. Certificate fields are optional; when present they must be
    truthful (``fiber_report`` validates them against a window and raises
    IntegrityError on contradiction).
    """

    name: str
    eval_fn: Callable[[int], int]
    card_fn: Callable[[int], int | None]
    members_fn: Callable[[int], frozenset[int] | None]
    sup_card: FiberCard | None = None  # certified sup of fiber sizes over all indices
    m_sup: FiberCard | None = None     # certified sup over finite fibers only
    injective: bool | None = None
    surjective: bool | None = None
    infinite_fibers: frozenset[int] | None = None  # certified infinite-fiber indices
    param: int | None = None


@dataclass(frozen=True)
class IndexMap:
    """A total self-map of an index set, given by image table or symbolic rule."""

    domain: IndexSet
    table: tuple[int, ...] | None = None
    rule: SymbolicRule | None = None

    def __post_init__(self):
        if (self.table is None) == (self.rule is None):
            raise ConstructionError("exactly one of table and rule is required")
        if self.table is not None and not self.domain.is_finite:
            raise ConstructionError("image tables need a finite domain")
        if self.rule is not None and self.domain.is_finite:
            raise ConstructionError("symbolic rules live on the unbounded domain")

    @property
    def is_finite(self) -> bool:
        return self.domain.is_finite

    @property
    def name(self) -> str:
        if self.table is not None:
            return f"table{list(self.table)}"
        return self.rule.name

    def _check_index(self, alpha: int) -> None:
        if alpha not in self.domain:
            raise DomainError(f"index {alpha!r} outside the domain")

    def eval(self, alpha: int) -> int:
        self._check_index(alpha)
        if self.table is not None:
            return self.table[alpha - 1]
        return self.rule.eval_fn(alpha)

    def fiber_card(self, alpha: int) -> FiberCard:
        self._check_index(alpha)
        if self.table is not None:
            return FiberCard(self.table.count(alpha))
        c = self.rule.card_fn(alpha)
        return INFINITE if c is None else FiberCard(c)

    def fiber(self, alpha: int) -> Fiber:
        """Exact preimage of alpha: {beta : eval(beta) == alpha}."""
        self._check_index(alpha)
        if self.table is not None:
            members = frozenset(i for i, img in enumerate(self.table, start=1) if img == alpha)
            return Fiber(FiberCard(len(members)), members)
        members = self.rule.members_fn(alpha)
        if members is None:
            return Fiber(INFINITE, None)
        return Fiber(FiberCard(len(members)), frozenset(members))


def make_finite_map(images: Sequence[int], n: int) -> IndexMap:
    """Total map on {1..n} with eval(k) = images[k-1]."""
    if n < 2:
        raise ConstructionError(f"need n >= 2, got {n}")
    if len(images) != n:
        raise ConstructionError(f"expected {n} images, got {len(images)}")
    for pos, img in enumerate(images, start=1):
        if not isinstance(img, int) or isinstance(img, bool) or not 1 <= img <= n:
            raise ConstructionError(f"image at position {pos} is {img!r}, not in 1..{n}")
    return IndexMap(IndexSet.finite(n), table=tuple(images))


def make_symbolic_map(rule: SymbolicRule) -> IndexMap:
    """Wrap a symbolic rule as a map on the unbounded index set."""
    return IndexMap(COUNTABLE, rule=rule)


def compose_finite(outer: IndexMap, inner: IndexMap) -> IndexMap:
    """The map alpha -> outer(inner(alpha)) on a shared finite domain."""
    if not (outer.is_finite and inner.is_finite) or outer.domain != inner.domain:
        raise DomainError("composition needs matching finite domains")
    return IndexMap(outer.domain, table=tuple(outer.table[i - 1] for i in inner.table))


# ---------------------------------------------------------------------------
# shipped symbolic rules


def successor_rule() -> SymbolicRule:
    """k -> k + 1; every fiber a singleton except the empty fiber over 1."""
    return SymbolicRule(
        name="successor",
        eval_fn=lambda k: k + 1,
        card_fn=lambda a: 0 if a == 1 else 1,
        members_fn=lambda a: frozenset() if a == 1 else frozenset((a - 1,)),
        sup_card=FiberCard(1),
        m_sup=FiberCard(1),
        injective=True,
        surjective=False,
        infinite_fibers=frozenset(),
    )


def clamp_pred_rule() -> SymbolicRule:
    """1 -> 1 and k -> k - 1; the fiber over 1 is {1, 2}."""
    return SymbolicRule(
        name="clamp_pred",
        eval_fn=lambda k: 1 if k == 1 else k - 1,
        card_fn=lambda a: 2 if a == 1 else 1,
        members_fn=lambda a: frozenset((1, 2)) if a == 1 else frozenset((a + 1,)),
        sup_card=FiberCard(2),
        m_sup=FiberCard(2),
        injective=False,
        surjective=True,
        infinite_fibers=frozenset(),
    )


def block_rule(b: int) -> SymbolicRule:
    """Compress consecutive blocks of length b: every fiber has size exactly b."""
    if not isinstance(b, int) or isinstance(b, bool) or b < 1:
        raise ConstructionError(f"block size must be an integer >= 1, got {b!r}")

    def members(a: int) -> frozenset[int]:
        lo = b * (a - 1) + 1
        return frozenset(range(lo, lo + b))

    return SymbolicRule(
        name="block",
        eval_fn=lambda k: (k - 1) // b + 1,
        card_fn=lambda a: b,
        members_fn=members,
        sup_card=FiberCard(b),
        m_sup=FiberCard(b),
        injective=b == 1,
        surjective=True,
        infinite_fibers=frozenset(),
        param=b,
    )


def triangular_rule() -> SymbolicRule:
    """Compress the k-th consecutive block of length k to k.

    The fiber over k has size exactly k, so every fiber is finite while the
    sizes admit no uniform bound. This is the canonical example separating
    "all fibers finite" from "fibers uniformly bounded".
    """

    def block_of(j: int) -> int:
        return (1 + math.isqrt(8 * j - 7)) // 2

    def members(a: int) -> frozenset[int]:
        lo = a * (a - 1) // 2 + 1
        return frozenset(range(lo, lo + a))

    return SymbolicRule(
        name="triangular",
        eval_fn=block_of,
        card_fn=lambda a: a,
        members_fn=members,
        sup_card=INFINITE,
        m_sup=INFINITE,
        injective=False,
        surjective=True,
        infinite_fibers=frozenset(),
    )


def doubling_rule() -> SymbolicRule:
    """k -> 2k; one-to-one but misses every odd index."""
    return SymbolicRule(
        name="doubling",
        eval_fn=lambda k: 2 * k,
        card_fn=lambda a: 1 if a % 2 == 0 else 0,
        members_fn=lambda a: frozenset((a // 2,)) if a % 2 == 0 else frozenset(),
        sup_card=FiberCard(1),
        m_sup=FiberCard(1),
        injective=True,
        surjective=False,
        infinite_fibers=frozenset(),
    )


def odd_collapse_rule() -> SymbolicRule:
    """Odd k -> 1 and even k -> k/2 + 1: the fiber over 1 is infinite.

    Away from index 1 every fiber is the singleton {2(a - 1)}, so the map is
    wildly unbounded globally yet uniformly bounded over its finite-fiber set.
    """

    def card(a: int) -> int | None:
        return None if a == 1 else 1

    def members(a: int) -> frozenset[int] | None:
        return None if a == 1 else frozenset((2 * (a - 1),))

    return SymbolicRule(
        name="odd_collapse",
        eval_fn=lambda k: 1 if k % 2 == 1 else k // 2 + 1,
        card_fn=card,
        members_fn=members,
        sup_card=INFINITE,
        m_sup=FiberCard(1),
        injective=False,
        surjective=True,
        infinite_fibers=frozenset((1,)),
    )


BUILTIN_RULES: dict[str, Callable[..., SymbolicRule]] = {
    "successor": successor_rule,
    "clamp_pred": clamp_pred_rule,
    "block": block_rule,
    "triangular": triangular_rule,
    "doubling": doubling_rule,
    "odd_collapse": odd_collapse_rule,
}


def symbolic_map(name: str, param: int | None = None) -> IndexMap:
    """Shipped symbolic map by name; ``param`` is the block size for "block"."""
    try:
        ctor = BUILTIN_RULES[name]
    except KeyError:
        raise ConstructionError(f"unknown symbolic rule {name!r}") from None
    if name == "block":
        if param is None:
            raise ConstructionError('rule "block" needs an integer param')
        return make_symbolic_map(ctor(param))
    if param is not None:
        raise ConstructionError(f"rule {name!r} takes no param")
    return make_symbolic_map(ctor())


# ---------------------------------------------------------------------------
# serialization

def map_to_json(m: IndexMap) -> dict:
    if m.table is not None:
        return {"kind": "finite", "images": list(m.table)}
    doc: dict = {"kind": "symbolic", "name": m.rule.name}
    if m.rule.param is not None:
        doc["param"] = m.rule.param
    return doc


def parse_map(doc: object) -> IndexMap:
    """Parse the map file format (the inverse of map_to_json)."""
    if not isinstance(doc, dict):
        raise ParseError("map document must be a JSON object")
    kind = doc.get("kind")
    if kind == "finite":
        images = doc.get("images")
        if not isinstance(images, list):
            raise ParseError('finite map needs an "images" array')
        try:
            return make_finite_map(images, len(images))
        except ConstructionError as exc:
            raise ParseError(str(exc)) from exc
    if kind == "symbolic":
        name = doc.get("name")
        if not isinstance(name, str):
            raise ParseError('symbolic map needs a "name" string')
        param = doc.get("param")
        if param is not None and (not isinstance(param, int) or isinstance(param, bool)):
            raise ParseError('"param" must be an integer')
        try:
            return symbolic_map(name, param)
        except ConstructionError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f'map "kind" must be "finite" or "symbolic", got {kind!r}')


# ---------------------------------------------------------------------------
# fiber reports

@dataclass(frozen=True)
class Certified:
    """Fiber sizes are uniformly bounded by ``bound``, proved for the whole domain."""

    bound: int


@dataclass(frozen=True)
class CertifiedUnbounded:
    """Fiber sizes certified to admit no finite uniform bound."""


@dataclass(frozen=True)
class WindowBound:
    """Largest fiber size seen on a finite window; nothing proved beyond it."""

    bound: int
    window: int


BoundVerdict = Certified | CertifiedUnbounded | WindowBound


@dataclass(frozen=True)
class WindowOnly:
    """A truth value established on a finite window only."""

    note: str
    value: float | None = None


Verdict = bool | WindowOnly


@dataclass(frozen=True)
class FiberReport:
    cardinalities: dict[int, FiberCard]
    sup: FiberCard  # max over the reported cardinalities, infinite dominating
    verdict: BoundVerdict
    m_set: frozenset[int]  # reported indices whose fiber is finite


def fiber_report(m: IndexMap, window: int = DEFAULT_WINDOW) -> FiberReport:
    """Per-index fiber sizes and a boundedness verdict.

    Finite domains are scanned in full and always come back Certified. On the
    unbounded domain the rule's certificate decides, after being validated
    against the window; without a certificate the verdict is WindowBound,
    unless an infinite fiber inside the window settles unboundedness exactly.
    """
    if window < 1:
        raise ConstructionError(f"window must be >= 1, got {window}")
    if m.is_finite:
        counts = Counter(m.table)
        cards = {a: FiberCard(counts.get(a, 0)) for a in m.domain.indices()}
        sup = sup_card(cards.values())
        return FiberReport(cards, sup, Certified(sup.count), frozenset(cards))
    rule = m.rule
    cards = {}
    for a in range(1, window + 1):
        c = rule.card_fn(a)
        cards[a] = INFINITE if c is None else FiberCard(c)
    sup = sup_card(cards.values())
    m_window = frozenset(a for a, c in cards.items() if not c.is_infinite)
    if rule.sup_card is not None:
        if rule.sup_card.is_infinite:
            return FiberReport(cards, sup, CertifiedUnbounded(), m_window)
        bound = rule.sup_card.count
        for a, c in cards.items():
            if c.is_infinite or c.count > bound:
                size = "infinite" if c.is_infinite else c.count
                raise IntegrityError(
                    f"rule {rule.name!r} declares fiber bound {bound} "
                    f"but fiber({a}) has size {size}"
                )
        return FiberReport(cards, sup, Certified(bound), m_window)
    if sup.is_infinite:
        return FiberReport(cards, sup, CertifiedUnbounded(), m_window)
    return FiberReport(cards, sup, WindowBound(sup.count, window), m_window)


def verify_fiber_soundness(m: IndexMap, window: int = DEFAULT_WINDOW) -> None:
    """Spot-check eval/fiber consistency on a window; raises IntegrityError.

    Checks both directions: every beta lies in the fiber of its image, and
    every enumerated fiber member maps back onto the fiber's index.
    """
    hi = min(window, m.domain.size) if m.is_finite else window
    for beta in range(1, hi + 1):
        fib = m.fiber(m.eval(beta))
        if fib.members is not None and beta not in fib.members:
            raise IntegrityError(f"{beta} missing from fiber({m.eval(beta)})")
    for alpha in range(1, hi + 1):
        fib = m.fiber(alpha)
        if fib.members is None:
            continue
        if fib.card.count != len(fib.members):
            raise IntegrityError(f"fiber({alpha}) cardinality disagrees with its member set")
        for beta in fib.members:
            if m.eval(beta) != alpha:
                raise IntegrityError(
                    f"fiber({alpha}) contains {beta} but eval({beta}) = {m.eval(beta)}"
                )
        stray = [b for b in range(1, hi + 1) if m.eval(b) == alpha and b not in fib.members]
        if stray:
            raise IntegrityError(f"fiber({alpha}) is missing {stray}")
