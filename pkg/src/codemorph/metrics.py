"""Evaluation metrics over token sequences and rank lists.

Sentence-level BLEU / ROUGE-L / METEOR plus mean reciprocal rank, with
corpus scores as plain means of per-instance scores. The METEOR here is
the exact-match simplification: no stemming or synonym resources, a
leftmost-maximal unigram alignment, F-mean 10PR/(R+9P) and fragmentation
penalty 0.5*(chunks/m)^3.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence

from codemorph.errors import EmptyCorpus, EmptyRankList

log = logging.getLogger(__name__)


class Smoothing(Enum):
    NONE = "none"
    # add 1 to numerator and denominator of p_n for n >= 2
    ADD_ONE_N2 = "add-one-n2"


@dataclass(frozen=True)
class BleuParams:
    max_n: int = 4
    weights: tuple[float, ...] = ()
    smoothing: Smoothing = Smoothing.ADD_ONE_N2

    def __post_init__(self) -> None:
        if not self.weights:
            object.__setattr__(self, "weights", tuple(1.0 / self.max_n for _ in range(self.max_n)))
        if len(self.weights) != self.max_n:
            raise ValueError("need one weight per n-gram order")
        if any(w < 0 for w in self.weights) or abs(sum(self.weights) - 1.0) > 1e-9:
            raise ValueError("weights must be non-negative and sum to 1")


@dataclass(frozen=True)
class RougeParams:
    beta: float = 1.2

    def __post_init__(self) -> None:
        if self.beta <= 0:
            raise ValueError("beta must be positive")


@dataclass(frozen=True)
class MeteorParams:
    fmean_recall_weight: float = 9.0  # F = (1+w)PR / (R + wP)
    penalty_scale: float = 0.5
    penalty_power: float = 3.0

    def __post_init__(self) -> None:
        if min(self.fmean_recall_weight, self.penalty_scale, self.penalty_power) <= 0:
            raise ValueError("all METEOR constants must be positive")


def _ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def bleu(candidate: Sequence[str], reference: Sequence[str], params: BleuParams | None = None) -> float:
    """Clipped n-gram precision BLEU with brevity penalty.

    b = 1 when the candidate is at least as long as the reference, else
    exp(1 - |ref|/|cand|); any zero precision under Smoothing.NONE pins
    the score to 0.
    """
    params = params or BleuParams()
    if not candidate:
        log.debug("empty candidate scored as 0")
        return 0.0
    log_sum = 0.0
    for n, weight in zip(range(1, params.max_n + 1), params.weights):
        cand_counts = _ngram_counts(candidate, n)
        ref_counts = _ngram_counts(reference, n)
        matched = sum(min(count, ref_counts[gram]) for gram, count in cand_counts.items())
        total = max(len(candidate) - n + 1, 0)
        if params.smoothing is Smoothing.ADD_ONE_N2 and n >= 2:
            matched += 1
            total += 1
        if matched == 0 or total == 0:
            return 0.0
        log_sum += weight * math.log(matched / total)
    if len(candidate) >= len(reference):
        brevity = 1.0
    else:
        brevity = math.exp(1.0 - len(reference) / len(candidate))
    return brevity * math.exp(log_sum)


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    """Classic O(|a|*|b|) dynamic program, one rolling row."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for tok_a in a:
        cur = [0]
        for j, tok_b in enumerate(b, start=1):
            if tok_a == tok_b:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(prev[j], cur[-1]))
        prev = cur
    return prev[-1]


def rouge_l(candidate: Sequence[str], reference: Sequence[str], params: RougeParams | None = None) -> float:
    """LCS-based F-measure: F = (1+b^2)RP / (R + b^2 P)."""
    params = params or RougeParams()
    if not candidate or not reference:
        log.debug("empty input scored as 0")
        return 0.0
    lcs = lcs_length(candidate, reference)
    if lcs == 0:
        return 0.0
    recall = lcs / len(reference)
    precision = lcs / len(candidate)
    beta_sq = params.beta * params.beta
    return (1 + beta_sq) * recall * precision / (recall + beta_sq * precision)


def meteor(candidate: Sequence[str], reference: Sequence[str], params: MeteorParams | None = None) -> float:
    """Exact-unigram METEOR with leftmost-maximal matching."""
    params = params or MeteorParams()
    if not candidate or not reference:
        log.debug("empty input scored as 0")
        return 0.0
    used = [False] * len(reference)
    alignment: list[tuple[int, int]] = []
    for ci, tok in enumerate(candidate):
        for ri, ref_tok in enumerate(reference):
            if not used[ri] and ref_tok == tok:
                used[ri] = True
                alignment.append((ci, ri))
                break
    m = len(alignment)
    if m == 0:
        return 0.0
    precision = m / len(candidate)
    recall = m / len(reference)
    w = params.fmean_recall_weight
    fmean = (1 + w) * precision * recall / (recall + w * precision)
    chunks = 1
    for (pc, pr), (ci, ri) in zip(alignment, alignment[1:]):
        if ci != pc + 1 or ri != pr + 1:
            chunks += 1
    penalty = params.penalty_scale * (chunks / m) ** params.penalty_power
    return fmean * (1.0 - penalty)


def mrr(ranks: Iterable[int]) -> float:
    """Mean reciprocal rank over 1-based ranks of the true target."""
    ranks = list(ranks)
    if not ranks:
        raise EmptyRankList("no ranks to average")
    if any(r < 1 for r in ranks):
        raise ValueError("ranks are 1-based positive integers")
    return sum(1.0 / r for r in ranks) / len(ranks)


MetricFn = Callable[[Sequence[str], Sequence[str]], float]


def corpus_score(pairs: Sequence[tuple[Sequence[str], Sequence[str]]], metric: MetricFn, params=None) -> float:
    """Arithmetic mean of per-instance scores."""
    if not pairs:
        raise EmptyCorpus("no instances to score")
    if params is not None:
        return sum(metric(c, r, params) for c, r in pairs) / len(pairs)
    return sum(metric(c, r) for c, r in pairs) / len(pairs)


def render_score(value: float, style: str = "x100") -> str:
    """Table-style rendering: "x100" = scores scaled by 100 at 2 decimals
    (summarization metrics), "raw4" = 4 decimals (MRR)."""
    if style == "x100":
        return f"{value * 100:.2f}"
    if style == "raw4":
        return f"{value:.4f}"
    raise ValueError(f"unknown render style {style!r}")
