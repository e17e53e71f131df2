"""Brute-force metric oracles, written before and kept independent of
codemorph.metrics.

These trade speed for obviousness: n-grams are counted by position
scanning, the LCS comes from enumerating all subsequences, and the
fragmentation penalty is simulated step by step. They are only meant for
token lists of length <= ~10.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations


def bleu_bruteforce(candidate, reference, max_n=4, weights=None, smooth_add_one=True):
    if weights is None:
        weights = [1.0 / max_n] * max_n
    if not candidate:
        return 0.0
    precisions = []
    for n in range(1, max_n + 1):
        cand_ngrams = [tuple(candidate[i:i + n]) for i in range(len(candidate) - n + 1)]
        ref_ngrams = [tuple(reference[i:i + n]) for i in range(len(reference) - n + 1)]
        matched = 0
        pool = list(ref_ngrams)
        for gram in cand_ngrams:
            if gram in pool:
                pool.remove(gram)  # clipping: each reference n-gram used once
                matched += 1
        total = len(cand_ngrams)
        if smooth_add_one and n >= 2:
            matched += 1
            total += 1
        if total == 0:
            return 0.0
        if matched == 0:
            return 0.0
        precisions.append(matched / total)
    if len(candidate) >= len(reference):
        brevity = 1.0
    else:
        brevity = math.exp(1.0 - len(reference) / len(candidate))
    score = brevity
    for w, p in zip(weights, precisions):
        score *= p ** w
    return score


def lcs_bruteforce(a, b):
    """Length of the longest common subsequence by enumerating all
    subsequences of the shorter list. Exponential; lists must be tiny."""
    short, long_ = (a, b) if len(a) <= len(b) else (b, a)
    for k in range(len(short), 0, -1):
        for idxs in combinations(range(len(short)), k):
            sub = [short[i] for i in idxs]
            # is sub a subsequence of long_?
            pos = 0
            for tok in long_:
                if pos < len(sub) and tok == sub[pos]:
                    pos += 1
            if pos == len(sub):
                return k
    return 0


def rouge_l_bruteforce(candidate, reference, beta=1.2):
    if not candidate or not reference:
        return 0.0
    lcs = lcs_bruteforce(candidate, reference)
    if lcs == 0:
        return 0.0
    recall = lcs / len(reference)
    precision = lcs / len(candidate)
    return ((1 + beta * beta) * recall * precision) / (recall + beta * beta * precision)


def meteor_bruteforce(candidate, reference):
    if not candidate or not reference:
        return 0.0
    # leftmost-maximal exact unigram matching
    taken = [False] * len(reference)
    pairs = []  # (cand_index, ref_index)
    for ci, tok in enumerate(candidate):
        for ri, rtok in enumerate(reference):
            if not taken[ri] and rtok == tok:
                taken[ri] = True
                pairs.append((ci, ri))
                break
    m = len(pairs)
    if m == 0:
        return 0.0
    precision = m / len(candidate)
    recall = m / len(reference)
    fmean = 10 * precision * recall / (recall + 9 * precision)
    chunks = 0
    prev = None
    for ci, ri in pairs:  # pairs are already in candidate order
        if prev is not None and ci == prev[0] + 1 and ri == prev[1] + 1:
            pass  # same chunk
        else:
            chunks += 1
        prev = (ci, ri)
    penalty = 0.5 * (chunks / m) ** 3
    return fmean * (1.0 - penalty)


def mrr_bruteforce(ranks):
    total = Fraction(0)
    for r in ranks:
        total += Fraction(1, r)
    return float(total / len(ranks))
