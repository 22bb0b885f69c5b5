"""Brute-force checks over the truncated space {0,1}^N and the invariant suite.

Nothing here trusts the closed forms in :mod:`cantor_repr.sequence`: prefix
coverage is counted over all ``2**N`` strings, and infinite sums are compared
with their depth-``N`` truncations, which are computed as exact integers by
the kernels in :mod:`cantor_repr._kernels`.
"""
from __future__ import annotations

import json
import math
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .compiler import (
    cluster_prefix,
    decode_representation,
    enumerate_table,
    partition_words,
)
from .errors import CantorError, InvalidInput
from .interval import (
    Kind,
    binary_value,
    classify,
    decode_fiber,
    fiber_unit_interval,
)
from .pattern import (
    Graph,
    Pattern,
    Point,
    incidences,
    is_tree,
    leaves,
    parse_pattern,
    serialize,
)
from .sequence import (
    ONE,
    ZERO,
    BinSeq,
    ConeRelation,
    apply_word,
    bit_at,
    canonicalize,
    cmts_value,
    cone_contains,
    cone_diameter,
    cone_relation,
    in_cmts,
    metric,
)

MAX_DEPTH = 30
CORPUS_NAMES = (
    "arc",
    "three_od",
    "four_od",
    "triangle",
    "circle",
    "point_cluster",
    "hierarchy",
    "polycrystal",
)


@dataclass(frozen=True)
class TruncatedSpace:
    """All ``2**depth`` bit strings of length ``depth``, in lexicographic order."""

    depth: int

    def __post_init__(self):
        if not 1 <= self.depth <= MAX_DEPTH:
            raise InvalidInput(f"depth must be in 1..{MAX_DEPTH}, got {self.depth}")

    def __len__(self):
        return 2**self.depth

    def string(self, code: int) -> str:
        return format(code, f"0{self.depth}b")

    def __iter__(self):
        return (self.string(c) for c in range(len(self)))


# ------------------------------------------------------------ partition check


@dataclass(frozen=True)
class PartitionReport:
    ok: bool
    uncovered: int
    overlapping: int
    witness: Optional[str] = None
    kind: Optional[str] = None


def check_partition(words: Sequence[str], depth: int, within: str = "") -> PartitionReport:
    """Check that every length-``depth`` string extending ``within`` has exactly
    one of ``words`` as a prefix.  The witness is the least offending string."""
    space = TruncatedSpace(depth)
    words = list(words)
    if any(len(w) > depth for w in words) or len(within) > depth:
        raise InvalidInput(f"depth {depth} is shorter than a word")
    lo = int(within, 2) << (depth - len(within)) if within else 0
    hi = lo + (1 << (depth - len(within)))
    values = [int(w, 2) if w else 0 for w in words]
    counts = _kernels.prefix_counts(depth, values, [len(w) for w in words], lo, hi)
    bad = np.flatnonzero(counts != 1)
    uncovered = int(np.count_nonzero(counts == 0))
    overlapping = int(np.count_nonzero(counts > 1))
    if bad.size == 0:
        return PartitionReport(True, 0, 0)
    first = int(bad[0])
    kind = "uncovered" if counts[first] == 0 else "overlap"
    return PartitionReport(False, uncovered, overlapping, space.string(lo + first), kind)


def literal_subdivision(parent: str, n: int) -> list[str]:
    """Second-level cones exactly as printed: ``parent 0``, then
    ``parent 1^(j-1) 0^j`` for ``j = 2..n-1``, then ``parent 1^(n-1)``.
    For ``n >= 3`` this family does not cover the parent cone."""
    if n < 1:
        raise InvalidInput(f"subdivision size must be >= 1, got {n}")
    if n == 1:
        return [parent]
    mid = [parent + "1" * (j - 1) + "0" * j for j in range(2, n)]
    return [parent + "0"] + mid + [parent + "1" * (n - 1)]


def corrected_subdivision(parent: str, n: int) -> list[str]:
    """Second-level cones with the same pattern as the first level."""
    return [parent + w for w in partition_words(n)]


# ----------------------------------------------------------- truncated sums


def _digits(seqs: Sequence[BinSeq], depth: int) -> np.ndarray:
    if not seqs:
        return np.zeros((0, depth), dtype=np.int64)
    return np.array([[int(b) for b in s.prefix(depth)] for s in seqs], dtype=np.int64)


def _check_base(base: int, depth: int) -> None:
    limit = _kernels.horner_limit(base)
    if depth > limit:
        raise InvalidInput(f"depth {depth} exceeds the exact int64 range ({limit}) for base {base}")


def truncated_metrics(xs: Sequence[BinSeq], ys: Sequence[BinSeq], depth: int) -> list[Fraction]:
    """``sum_{i<=depth} |x_i - y_i| / 2**i`` for each pair."""
    _check_base(2, depth)
    diff = np.abs(_digits(xs, depth) - _digits(ys, depth))
    return [Fraction(int(v), 2**depth) for v in _kernels.horner(diff, 2)]


def truncated_binary_values(xs: Sequence[BinSeq], depth: int) -> list[Fraction]:
    _check_base(2, depth)
    return [Fraction(int(v), 2**depth) for v in _kernels.horner(_digits(xs, depth), 2)]


def truncated_cmts_values(xs: Sequence[BinSeq], depth: int) -> list[Fraction]:
    _check_base(3, depth)
    return [Fraction(int(v), 3**depth) for v in _kernels.horner(2 * _digits(xs, depth), 3)]


@dataclass(frozen=True)
class TruncationReport:
    ok: bool
    exact: Fraction
    truncated: Fraction
    bound: Fraction


def check_metric_truncation(x: BinSeq, y: BinSeq, depth: int) -> TruncationReport:
    TruncatedSpace(depth)
    exact = metric(x, y)
    trunc = truncated_metrics([x], [y], depth)[0]
    bound = Fraction(1, 2**depth)
    return TruncationReport(abs(exact - trunc) <= bound, exact, trunc, bound)


# ------------------------------------------------------------------ sampling


def random_binseq(rng: random.Random, max_preamble: int = 8, max_period: int = 8) -> BinSeq:
    pre = "".join(rng.choice("01") for _ in range(rng.randint(0, max_preamble)))
    per = "".join(rng.choice("01") for _ in range(rng.randint(1, max_period)))
    return canonicalize(pre, per)


def all_canonical(max_total: int) -> list[BinSeq]:
    """Every canonical sequence with ``len(preamble) + len(period) <= max_total``."""
    out = []
    for total in range(1, max_total + 1):
        for p in range(1, total + 1):
            n = total - p
            for bits in range(2**total):
                s = format(bits, f"0{total}b")
                x = BinSeq(s[:n], s[n:])
                if x.preamble == s[:n] and x.period == s[n:]:
                    out.append(x)
    return out


def load_corpus(paths: Optional[Iterable] = None) -> dict[str, Pattern]:
    """Parse the bundled corpus, or the given pattern files keyed by stem."""
    out = {}
    if paths is None:
        root = resources.files("cantor_repr") / "corpus"
        for name in CORPUS_NAMES:
            out[name] = parse_pattern((root / f"{name}.json").read_text())
        return out
    for p in paths:
        p = Path(p)
        try:
            text = p.read_text()
        except OSError as exc:
            raise InvalidInput(f"corpus file unreadable: {p}: {exc}") from None
        out[p.stem] = parse_pattern(text)
    return out


# --------------------------------------------------------------------- suite


@dataclass
class SuiteConfig:
    depth: int = 12
    samples: int = 200
    seed: int = 2024
    corpus: Optional[list] = None
    sample_denominator: int = 8
    max_denominator: int = 2**10
    desk_scale: int = 10
    max_partition: int = 8
    # Extra word families that must fail check_partition; used for fault injection.
    inject_families: dict = field(default_factory=dict)

    def validate(self) -> None:
        if not 1 <= self.depth <= 20:
            raise InvalidInput(f"depth must be in 1..20, got {self.depth}")
        if self.samples < 1 or self.sample_denominator < 2 or self.max_denominator < 1:
            raise InvalidInput("samples >= 1, sample_denominator >= 2, max_denominator >= 1 required")


@dataclass
class CheckRecord:
    name: str
    status: str
    witness: Optional[str]
    seconds: float


@dataclass
class SuiteReport:
    records: list

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    def to_json(self) -> str:
        return json.dumps(
            {"ok": self.ok, "checks": [asdict(r) for r in self.records]}, indent=2
        )

    def to_text(self) -> str:
        lines = []
        for r in self.records:
            line = f"{r.status.upper():4}  {r.name}  ({r.seconds:.3f}s)"
            if r.witness:
                line += f"  witness: {r.witness}"
            lines.append(line)
        return "\n".join(lines)


class _Fail(Exception):
    pass


def _expect(cond: bool, witness) -> None:
    if not cond:
        raise _Fail(str(witness))


def _pairs(rng, n):
    return [(random_binseq(rng), random_binseq(rng)) for _ in range(n)]


def _check_contraction(cfg, rng):
    for x, y in _pairs(rng, cfg.samples):
        d = metric(x, y)
        for k in "01":
            _expect(metric(apply_word(k, x), apply_word(k, y)) == d / 2, (k, x, y))


def _check_cover(cfg, rng):
    rep = check_partition(["0", "1"], cfg.depth)
    _expect(rep.ok, rep.witness)
    for x in (random_binseq(rng) for _ in range(cfg.samples)):
        _expect(cone_contains("0", x) != cone_contains("1", x), x)


def _check_metric_axioms(cfg, rng):
    for _ in range(cfg.samples):
        x, y, z = (random_binseq(rng) for _ in range(3))
        dxy = metric(x, y)
        _expect(dxy == metric(y, x), ("symmetry", x, y))
        _expect((dxy == 0) == (x == y), ("identity", x, y))
        _expect(metric(x, x) == 0, ("identity", x))
        _expect(dxy <= metric(x, z) + metric(z, y), ("triangle", x, y, z))
        _expect(dxy <= 1, ("bounded", x, y))


def _random_word(rng, n):
    return "".join(rng.choice("01") for _ in range(n))


def _check_word_composition(cfg, rng):
    for _ in range(cfg.samples):
        w1, w2 = _random_word(rng, rng.randint(0, 6)), _random_word(rng, rng.randint(0, 6))
        x = random_binseq(rng)
        _expect(apply_word(w1, apply_word(w2, x)) == apply_word(w1 + w2, x), (w1, w2, x))


def _check_lipschitz(cfg, rng):
    for x, y in _pairs(rng, cfg.samples):
        _expect(abs(binary_value(x) - binary_value(y)) <= metric(x, y), (x, y))


def _check_cmts_digits(cfg, rng):
    for x in (random_binseq(rng) for _ in range(cfg.samples)):
        _expect(in_cmts(cmts_value(x)), x)
    _expect(cmts_value(ONE) == 1, ONE)
    _expect(cmts_value(BinSeq("1", "0")) == Fraction(2, 3), "1(0)")


def _check_cmts_distortion(cfg, rng):
    for x, y in _pairs(rng, cfg.samples):
        _expect(abs(cmts_value(x) - cmts_value(y)) <= 2 * metric(x, y), (x, y))


def _check_canonicalize(cfg, rng):
    for _ in range(cfg.samples):
        pre = _random_word(rng, rng.randint(0, 8))
        per = _random_word(rng, rng.randint(1, 8))
        x = canonicalize(pre, per)
        _expect(canonicalize(x.preamble, x.period) == x, (pre, per))
        raw = (pre + per * (3 * (len(pre) + len(per))))
        for i in range(1, 3 * (len(pre) + len(per)) + 1):
            _expect(bit_at(x, i) == int(raw[i - 1]), (pre, per, i))


def _unit_rationals(max_den):
    """Every rational in [0, 1] with denominator <= ``max_den``, once each."""
    yield Fraction(0)
    for b in range(1, max_den + 1):
        for a in range(1, b + 1):
            if math.gcd(a, b) == 1:
                yield Fraction(a, b)


def _check_interval_round_trip(cfg, rng):
    for y in _unit_rationals(cfg.max_denominator):
        fib = fiber_unit_interval(y)
        _expect(decode_fiber(fib) == y, y)


def _check_cardinality(cfg, rng):
    for y in _unit_rationals(min(cfg.max_denominator, 256)):
        size = len(fiber_unit_interval(y))
        _expect((size == 2) == (classify(y).kind is Kind.DYADIC_INTERIOR), y)
        _expect(size in (1, 2), y)


def _check_interval_partition(cfg, rng):
    owner: dict = {}
    for y in _unit_rationals(min(cfg.max_denominator, 64)):
        for e in fiber_unit_interval(y):
            _expect(e not in owner, (e, owner.get(e), y))
            owner[e] = y


def _check_surjectivity(cfg, rng):
    for x in all_canonical(cfg.desk_scale):
        _expect(x in fiber_unit_interval(binary_value(x)), x)


def _corpus(cfg):
    return load_corpus(cfg.corpus)


def _graphs(corpus):
    for name, p in corpus.items():
        for path, leaf in leaves(p):
            if isinstance(leaf, Graph):
                yield name, path, leaf


def _check_incidence_sum(cfg, rng):
    for name, path, g in _graphs(_corpus(cfg)):
        total = sum(len(incidences(g, n)) for n in g.nodes)
        _expect(total == 2 * g.r, (name, path))


def _check_serialization(cfg, rng):
    for name, p in _corpus(cfg).items():
        _expect(parse_pattern(json.dumps(serialize(p))) == p, name)


def _has_cycle(g: Graph) -> bool:
    parent = {n: n for n in g.nodes}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    for a in g.arcs:
        ra, rb = find(a.src), find(a.dst)
        if ra == rb:
            return True
        parent[ra] = rb
    return False


def _check_tree_detection(cfg, rng):
    for name, path, g in _graphs(_corpus(cfg)):
        _expect(is_tree(g) == (not _has_cycle(g)), (name, path))


def _check_partition_words(cfg, rng):
    universe = all_canonical(cfg.desk_scale)
    for r in range(1, cfg.max_partition + 1):
        words = partition_words(r)
        for a in range(r):
            for b in range(a + 1, r):
                _expect(cone_relation(words[a], words[b]) is ConeRelation.DISJOINT, (r, a, b))
        rep = check_partition(words, max(cfg.depth, r))
        _expect(rep.ok, (r, rep.witness))
        for x in universe:
            _expect(sum(cone_contains(w, x) for w in words) == 1, (r, x))


def _tables(cfg):
    return {
        name: enumerate_table(p, cfg.sample_denominator) for name, p in _corpus(cfg).items()
    }


def _check_injectivity(cfg, rng):
    for name, rows in _tables(cfg).items():
        owner: dict = {}
        for k, row in enumerate(rows):
            for e in row.fiber:
                _expect(e not in owner, (name, e, owner.get(e), k))
                owner[e] = k


def _check_compiler_round_trip(cfg, rng):
    corpus = _corpus(cfg)
    for name, rows in _tables(cfg).items():
        for row in rows:
            _expect(decode_representation(corpus[name], row.fiber) == row.point, (name, row.point))


def _check_fiber_sizes(cfg, rng):
    corpus = _corpus(cfg)
    for name, rows in _tables(cfg).items():
        for row in rows:
            q = row.point
            leaf = _leaf_at(corpus[name], q.path)
            if isinstance(leaf, Point):
                _expect(len(row.fiber) == 1, (name, q))
            elif q.is_node:
                _expect(len(row.fiber) == len(incidences(leaf, q.node)), (name, q))
            else:
                dyadic = classify(q.t).kind is Kind.DYADIC_INTERIOR
                _expect(len(row.fiber) == (2 if dyadic else 1), (name, q))


def _leaf_at(p, path):
    for i in path:
        p = p.children[i - 1]
    return p


def _check_incidence_shape(cfg, rng):
    corpus = _corpus(cfg)
    for name, rows in _tables(cfg).items():
        for row in rows:
            q = row.point
            leaf = _leaf_at(corpus[name], q.path)
            if not (isinstance(leaf, Graph) and q.is_node):
                continue
            inc = incidences(leaf, q.node)
            prefix = cluster_prefix(corpus[name], q.path)
            for i, _ in inc:
                w = prefix + partition_words(leaf.r)[i - 1]
                hits = sum(cone_contains(w, e) for e in row.fiber)
                expected = sum(1 for j, _ in inc if j == i)
                _expect(hits == expected, (name, q, i))


def _check_cluster_similarity(cfg, rng):
    for x, y in _pairs(rng, cfg.samples):
        w = _random_word(rng, rng.randint(0, 10))
        _expect(
            metric(apply_word(w, x), apply_word(w, y)) == Fraction(1, 2 ** len(w)) * metric(x, y),
            (w, x, y),
        )


def _check_truncation(cfg, rng):
    xs = [random_binseq(rng) for _ in range(cfg.samples)]
    ys = [random_binseq(rng) for _ in range(cfg.samples)]
    exact_d = [metric(x, y) for x, y in zip(xs, ys)]
    exact_b = [binary_value(x) for x in xs]
    exact_h = [cmts_value(x) for x in xs]
    for n in range(8, 21):
        b2, b3 = Fraction(1, 2**n), Fraction(1, 3**n)
        for e, t in zip(exact_d, truncated_metrics(xs, ys, n)):
            _expect(0 <= e - t <= b2, ("metric", n, e, t))
        for x, e, t in zip(xs, exact_b, truncated_binary_values(xs, n)):
            _expect(0 <= e - t <= b2, ("binary_value", n, x))
        for x, e, t in zip(xs, exact_h, truncated_cmts_values(xs, n)):
            _expect(0 <= e - t <= b3, ("cmts_value", n, x))


def _check_nested_cones(cfg, rng):
    n = cfg.depth
    for _ in range(max(1, cfg.samples // 20)):
        w = _random_word(rng, n)
        for k in range(n + 1):
            a = apply_word(w[:k], ZERO)
            b = apply_word(w[:k], ONE)
            _expect(cone_diameter(w[:k]) == Fraction(1, 2**k) == metric(a, b), (w, k))
        counts = _kernels.prefix_counts(
            n, [int(w[:k], 2) for k in range(1, n + 1)], list(range(1, n + 1)), 0, 2**n
        )
        pinned = np.flatnonzero(counts == n)
        _expect(pinned.tolist() == [int(w, 2)], (w, pinned.tolist()))


CHECKS: list[tuple[str, Callable]] = [
    ("core.contraction_identity", _check_contraction),
    ("core.self_similar_cover", _check_cover),
    ("core.metric_axioms", _check_metric_axioms),
    ("core.word_composition", _check_word_composition),
    ("core.lipschitz_bound", _check_lipschitz),
    ("core.cmts_digits", _check_cmts_digits),
    ("core.cmts_distortion", _check_cmts_distortion),
    ("core.canonicalize", _check_canonicalize),
    ("interval.round_trip", _check_interval_round_trip),
    ("interval.cardinality_law", _check_cardinality),
    ("interval.partition", _check_interval_partition),
    ("interval.surjectivity", _check_surjectivity),
    ("pattern.incidence_sum", _check_incidence_sum),
    ("pattern.serialization_round_trip", _check_serialization),
    ("pattern.tree_detection", _check_tree_detection),
    ("compiler.partition_words", _check_partition_words),
    ("compiler.injectivity", _check_injectivity),
    ("compiler.round_trip", _check_compiler_round_trip),
    ("compiler.fiber_sizes", _check_fiber_sizes),
    ("compiler.incidence_shape", _check_incidence_shape),
    ("compiler.cluster_similarity", _check_cluster_similarity),
    ("oracle.truncation_agreement", _check_truncation),
    ("oracle.nested_cones", _check_nested_cones),
]


def _run_one(name, fn, cfg) -> CheckRecord:
    rng = random.Random(f"{cfg.seed}:{name}")
    start = time.perf_counter()
    try:
        fn(cfg, rng)
        status, witness = "pass", None
    except _Fail as exc:
        status, witness = "fail", str(exc)
    except CantorError as exc:
        status, witness = "fail", f"{type(exc).__name__}: {exc}"
    return CheckRecord(name, status, witness, time.perf_counter() - start)


def run_suite(cfg: Optional[SuiteConfig] = None) -> SuiteReport:
    """Run every invariant check; records come back sorted by check name."""
    cfg = cfg or SuiteConfig()
    cfg.validate()
    load_corpus(cfg.corpus)  # unreadable corpus is a config error, not a check failure
    records = [_run_one(name, fn, cfg) for name, fn in CHECKS]
    for label, words in sorted(cfg.inject_families.items()):
        start = time.perf_counter()
        rep = check_partition(words, max(cfg.depth, max(map(len, words))))
        records.append(
            CheckRecord(
                f"injected.{label}",
                "pass" if rep.ok else "fail",
                None if rep.ok else f"{rep.kind} {rep.witness}",
                time.perf_counter() - start,
            )
        )
    records.sort(key=lambda r: r.name)
    return SuiteReport(records)


def literal_two_level_family(n: int = 3, sub: int = 3) -> list[str]:
    """Full-space family: each of the ``n`` first-level cones subdivided by
    :func:`literal_subdivision` into ``sub`` pieces."""
    parents = ["1" * (i - 1) + "0" for i in range(1, n)] + ["1" * (n - 1)]
    return [w for p in parents for w in literal_subdivision(p, sub)]
