"""Strategy registry and the shared apply machinery.

Each strategy registers a planner: a function from (tree, config) to
either a list of candidate sites or a full plan of byte edits. The
driver owns the common pipeline: language gate, parse-error refusal,
site selection policy, edit application and the re-parse safety net.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from codemorph.edits import Edit, EditSet, apply_edits
from codemorph.errors import InternalRenderError, LanguageMismatch
from codemorph.lang import Language, SourceSnippet
from codemorph.parse import parse, parse_text
from codemorph.tree import SyntaxTree, has_errors

PARSE_ERRORS_REASON = "parse errors"


class Category(Enum):
    BLOCK = "T_B"
    INSERT_DELETE = "T_ID"
    GRAMMATICAL_STATEMENT = "T_GS"
    GRAMMATICAL_TOKEN = "T_GT"
    IDENTIFIER = "T_I"

    @classmethod
    def parse(cls, name: str) -> "Category":
        for member in cls:
            if name in (member.value, member.name):
                return member
        raise ValueError(f"unknown category: {name!r}")


class SitePolicy(Enum):
    ALL = "all"
    FIRST = "first"
    RANDOM_ONE = "random-one"


class InsertLocation(Enum):
    FRONT = "front"
    MIDDLE = "middle"
    END = "end"


@dataclass(frozen=True)
class TransformConfig:
    seed: int = 0
    site_policy: SitePolicy = SitePolicy.ALL
    insert_location: InsertLocation = InsertLocation.MIDDLE
    junk_template_index: int | None = None

    def rng(self) -> random.Random:
        return random.Random(self.seed)


@dataclass(frozen=True)
class Strategy:
    id: str
    category: Category
    languages: frozenset[Language]
    description: str

    def supports(self, language: Language) -> bool:
        return language in self.languages


class Status(Enum):
    APPLIED = "applied"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class TransformOutcome:
    status: Status
    new_text: bytes | None = None
    edits: EditSet = field(default_factory=EditSet)
    sites: tuple[tuple[int, int], ...] = ()
    reason: str | None = None

    @property
    def applied(self) -> bool:
        return self.status is Status.APPLIED


@dataclass(frozen=True)
class Site:
    """One candidate application point: an anchor span plus matcher data."""
    start: int
    end: int
    data: object = None

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass
class Plan:
    sites: list[Site]
    edits: list[Edit]


# planner: (tree, config) -> Plan | None (None = not applicable)
Planner = Callable[[SyntaxTree, TransformConfig], "Plan | None"]


@dataclass(frozen=True)
class _Registered:
    strategy: Strategy
    planner: Planner
    na_reason: str


_REGISTRY: dict[str, _Registered] = {}


def register(strategy_id: str, category: Category, languages: set[Language],
             description: str, na_reason: str):
    def wrap(planner: Planner) -> Planner:
        strategy = Strategy(strategy_id, category, frozenset(languages), description)
        if strategy_id in _REGISTRY:
            raise ValueError(f"duplicate strategy {strategy_id}")
        _REGISTRY[strategy_id] = _Registered(strategy, planner, na_reason)
        return planner
    return wrap


def apply_policy(sites: list[Site], config: TransformConfig) -> list[Site]:
    """Site policy without the overlap filter, for strategies whose nested
    sites cannot conflict."""
    if not sites:
        return []
    if config.site_policy is SitePolicy.FIRST:
        return [sites[0]]
    if config.site_policy is SitePolicy.RANDOM_ONE:
        return [config.rng().choice(sites)]
    return list(sites)


def select_sites(sites: list[Site], config: TransformConfig) -> list[Site]:
    """Drop nested/overlapping candidates (outermost wins), then apply the
    site policy. Selection order is document order; RandomOne draws from
    the seeded generator."""
    kept: list[Site] = []
    for site in sites:
        if all(site.end <= k.start or site.start >= k.end or site.start == site.end
               for k in kept):
            kept.append(site)
    if not kept:
        return []
    if config.site_policy is SitePolicy.FIRST:
        return [kept[0]]
    if config.site_policy is SitePolicy.RANDOM_ONE:
        return [config.rng().choice(kept)]
    return kept


def per_site(find: Callable[[SyntaxTree], list[Site]],
             build: Callable[[SyntaxTree, Site, TransformConfig], list[Edit]]) -> Planner:
    """Adapter for strategies that act independently at each match."""

    def planner(tree: SyntaxTree, config: TransformConfig) -> Plan | None:
        sites = find(tree)
        if not sites:
            return None
        chosen = select_sites(sites, config)
        if not chosen:
            return None
        edits: list[Edit] = []
        for site in chosen:
            edits.extend(build(tree, site, config))
        return Plan(chosen, edits)

    return planner


def _sorted_registry() -> list[_Registered]:
    def key(reg: _Registered):
        prefix, num = reg.strategy.id.rsplit("-", 1)
        order = {"B": 0, "ID": 1, "GS": 2, "GT": 3, "I": 4}[prefix]
        return (order, int(num))

    return sorted(_REGISTRY.values(), key=key)


def list_strategies(language: Language | None = None,
                    category: Category | None = None) -> list[Strategy]:
    out = []
    for reg in _sorted_registry():
        if language is not None and not reg.strategy.supports(language):
            continue
        if category is not None and reg.strategy.category is not category:
            continue
        out.append(reg.strategy)
    return out


def get_strategy(strategy_id: str) -> Strategy:
    try:
        return _REGISTRY[strategy_id].strategy
    except KeyError:
        raise ValueError(f"unknown strategy id: {strategy_id!r}") from None


def _resolve(strategy: Strategy | str) -> _Registered:
    sid = strategy if isinstance(strategy, str) else strategy.id
    if sid not in _REGISTRY:
        raise ValueError(f"unknown strategy id: {sid!r}")
    return _REGISTRY[sid]


@dataclass(frozen=True)
class Applicability:
    applicable: bool
    sites: tuple[tuple[int, int], ...]
    reason: str | None = None


def is_applicable(strategy: Strategy | str, snippet: SourceSnippet,
                  config: TransformConfig | None = None) -> Applicability:
    reg = _resolve(strategy)
    if snippet.language not in reg.strategy.languages:
        raise LanguageMismatch(f"{reg.strategy.id} is not defined for {snippet.language.value}")
    tree = parse(snippet)
    if has_errors(tree):
        return Applicability(False, (), PARSE_ERRORS_REASON)
    plan = reg.planner(tree, config or TransformConfig())
    if plan is None or not plan.sites:
        return Applicability(False, (), reg.na_reason)
    return Applicability(True, tuple(s.span for s in plan.sites))


def apply(strategy: Strategy | str, snippet: SourceSnippet,
          config: TransformConfig | None = None) -> TransformOutcome:
    config = config or TransformConfig()
    reg = _resolve(strategy)
    if snippet.language not in reg.strategy.languages:
        raise LanguageMismatch(f"{reg.strategy.id} is not defined for {snippet.language.value}")
    tree = parse(snippet)
    if has_errors(tree):
        return TransformOutcome(Status.NOT_APPLICABLE, reason=PARSE_ERRORS_REASON)
    plan = reg.planner(tree, config)
    if plan is None or not plan.sites:
        return TransformOutcome(Status.NOT_APPLICABLE, reason=reg.na_reason)
    edit_set = EditSet(tuple(plan.edits))
    new_text = apply_edits(snippet.text, edit_set)
    new_tree = parse_text(new_text, snippet.language, f"{snippet.id}#{reg.strategy.id}")
    if has_errors(new_tree):
        raise InternalRenderError(
            f"{reg.strategy.id} produced unparseable output on snippet {snippet.id!r}")
    return TransformOutcome(Status.APPLIED, new_text=new_text, edits=edit_set,
                            sites=tuple(edit_set.spans()))


def apply_category(category: Category, snippet: SourceSnippet,
                   config: TransformConfig | None = None) -> list[tuple[Strategy, TransformOutcome]]:
    """Every language-eligible strategy of the category, each applied to
    the original snippet (no chaining)."""
    out = []
    for strategy in list_strategies(language=snippet.language, category=category):
        out.append((strategy, apply(strategy, snippet, config)))
    return out
