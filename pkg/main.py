"""Command line entry point computing the next-to-top winding grading of
sutured annular Khovanov homology of braid closures, the doubling spectral
sequence and its sanity checks."""

import argparse
import functools
import json
import sys
from collections import OrderedDict
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import gin
from setproctitle import setproctitle as ptitle

from constants import OUTPUT_SCHEMA_VERSION
from core.algorithms.hochschild import hochschild_complex
from core.algorithms.skh import (
    DoublingReport,
    SkhResult,
    batch,
    closure_shift,
    decat_check,
    doubling_report,
    euler_characteristic,
    poincare_polynomial,
    skh_next_to_top,
)
from core.algorithms.tate import pi_formality_replay, tate_complex
from core.base_abstractions.bimodule import BraidWord, algebra_for
from core.base_abstractions.misc import InvalidConfigError, RankTable, SkhError
from core.base_abstractions.twisted import box, reduced_braid_bimodule
from utils.cache_utils import DiskCache, cache_key, default_cache_dir
from utils.system import HUMAN_LOG_LEVELS, get_logger, init_logging

MODES = ("skh", "pages", "decat", "pi-formal", "dump")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2


def get_args(argv: Optional[Sequence[str]] = None):
    """Creates the argument parser and parses any input arguments."""

    parser = argparse.ArgumentParser(
        description="skh", formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )

    parser.add_argument(
        "--strands", type=int, default=2, help="number of braid strands (n + 1)",
    )
    parser.add_argument(
        "--braid",
        type=str,
        action="append",
        default=None,
        help='braid word such as "s1 S2 s1", may be given several times',
    )
    parser.add_argument(
        "--mode", type=str, default="skh", choices=MODES, help="what to compute",
    )
    parser.add_argument(
        "--output", type=str, default="text", choices=("text", "json"), help="output format",
    )
    parser.add_argument(
        "--cache-dir",
        dest="cache_dir",
        type=str,
        default=default_cache_dir(),
        help="directory caching computed results, defaults to $SKH_CACHE_DIR",
    )
    parser.add_argument(
        "--max-pages",
        dest="max_pages",
        type=int,
        default=None,
        help="largest spectral sequence page to compute before giving up",
    )
    parser.add_argument(
        "--jobs", type=int, default=1, help="worker processes for several braids",
    )
    parser.add_argument(
        "--dump-level",
        dest="dump_level",
        type=int,
        default=0,
        choices=(0, 1, 2),
        help="dump mode detail: 0 algebra, 1 adds bimodules and Hochschild complexes, 2 adds the doubled complex with its involution",
    )
    parser.add_argument(
        "--n", type=int, default=1, help="n of A_n for the pi-formality replay",
    )
    parser.add_argument(
        "--gp", default=None, action="append", help="values to be used by gin-config.",
    )
    parser.add_argument(
        "-l",
        "--log_level",
        default="warning",
        type=str,
        required=False,
        help="sets the log_level. it must be one of {}.".format(
            ", ".join(HUMAN_LOG_LEVELS)
        ),
    )

    return parser.parse_args(argv)


class RunConfig(NamedTuple):
    """Validated command line configuration.

    # Attributes

    strands : Number of braid strands.
    braids : Braid word strings, the empty word when none is given.
    mode : One of `MODES`.
    output : `text` or `json`.
    cache_dir : Cache directory, `None` disables caching.
    max_pages : Optional page cap for the `pages` mode.
    jobs : Worker processes for the `skh` mode.
    dump_level : Detail of the `dump` mode.
    n : `n` of `A_n` for the `pi-formal` mode.
    gin_bindings : The `--gp` bindings, part of cache keys.
    """

    strands: int
    braids: Tuple[str, ...]
    mode: str
    output: str
    cache_dir: Optional[str]
    max_pages: Optional[int]
    jobs: int
    dump_level: int
    n: int
    gin_bindings: Tuple[str, ...] = ()

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(
            strands=args.strands,
            braids=tuple(args.braid or [""]),
            mode=args.mode,
            output=args.output,
            cache_dir=args.cache_dir,
            max_pages=args.max_pages,
            jobs=args.jobs,
            dump_level=args.dump_level,
            n=args.n,
            gin_bindings=tuple(args.gp or []),
        )

    def validate(self) -> None:
        problems = []
        if self.mode not in MODES:
            problems.append("unknown mode {}".format(self.mode))
        if self.output not in ("text", "json"):
            problems.append("unknown output {}".format(self.output))
        if self.jobs < 1:
            problems.append("jobs must be positive, got {}".format(self.jobs))
        if self.dump_level not in (0, 1, 2):
            problems.append("bad dump level {}".format(self.dump_level))
        if self.mode == "pi-formal" and self.n < 1:
            problems.append("pi-formal needs n >= 1, got {}".format(self.n))
        if self.max_pages is not None and self.max_pages < 1:
            problems.append("max_pages must be positive, got {}".format(self.max_pages))
        if len(problems) > 0:
            raise InvalidConfigError("; ".join(problems))


def parse_braid(text: str, strands: int) -> BraidWord:
    """Parses `"s1 S2 s1"` style words, see `BraidWord.parse`."""
    return BraidWord.parse(text, strands)


def _ranks_json(ranks: RankTable) -> List[List[int]]:
    return [[g[0], g[1], ranks[g]] for g in sorted(ranks)]


def _skh_json(result: SkhResult) -> Dict[str, Any]:
    return OrderedDict(
        [
            ("braid", str(result.word)),
            ("strands", result.word.strands),
            ("winding", result.winding),
            ("ranks", _ranks_json(result.ranks)),
            ("euler", euler_characteristic(result).to_json()),
        ]
    )


def _report_json(report: DoublingReport) -> Dict[str, Any]:
    return OrderedDict(
        [
            ("braid", str(report.word)),
            ("strands", report.word.strands),
            (
                "pages",
                [
                    OrderedDict(
                        [
                            ("r", page.index),
                            ("ranks", _ranks_json(page.ranks())),
                            ("differential", [list(a) for a in page.differential]),
                        ]
                    )
                    for page in report.tate.pages
                ],
            ),
            ("stabilized_at", report.tate.stabilized_at),
            (
                "e_infinity_halved",
                [[h, str(q)] for h, q in report.e_infinity_halved()],
            ),
            ("skh_sigma", _ranks_json(report.sigma.ranks)),
            ("skh_sigma_squared", _ranks_json(report.sigma_squared.ranks)),
            (
                "decat",
                OrderedDict(
                    [
                        ("lhs", report.decat.lhs.to_json()),
                        ("rhs", report.decat.rhs.to_json()),
                        ("congruent", report.decat.congruent),
                    ]
                ),
            ),
            ("violations", report.violations),
        ]
    )


def _ranks_text(ranks: RankTable) -> str:
    return ", ".join("({},{}):{}".format(g[0], g[1], ranks[g]) for g in sorted(ranks)) or "0"


def _cached_skh(cache_dir: Optional[str], word: BraidWord) -> SkhResult:
    return DiskCache(cache_dir).get_or_compute(
        cache_key("skh", word.strands, str(word)), lambda: skh_next_to_top(word)
    )


def _cached_report(cfg: RunConfig, word: BraidWord) -> DoublingReport:
    key = cache_key(
        "pages", word.strands, str(word), cfg.max_pages, *cfg.gin_bindings
    )
    return DiskCache(cfg.cache_dir).get_or_compute(
        key, lambda: doubling_report(word, max_pages=cfg.max_pages)
    )


def _complex_json(generators, entries) -> Dict[str, Any]:
    return OrderedDict(
        [
            ("generators", [[g.name, list(g.grading)] for g in generators]),
            (
                "differential",
                [[generators[i].name, generators[j].name] for i, j in entries],
            ),
        ]
    )


def _dump(cfg: RunConfig, words: List[BraidWord]) -> Dict[str, Any]:
    """Level 0 is the algebra, level 1 adds each bimodule with its Hochschild
    complex and level 2 the doubled complex `E^0` with its involution."""
    A = algebra_for(cfg.strands)
    out: Dict[str, Any] = OrderedDict()
    out["algebra"] = OrderedDict(
        [
            ("name", A.name),
            ("basis", [[p.name, p.left, p.right, list(p.grading)] for p in A.basis]),
            (
                "multiplication",
                [
                    [A.basis[i].name, A.basis[j].name, A.basis[k].name]
                    for i in A.radical()
                    for j in A.radical()
                    for k in [A.mult(i, j)]
                    if k is not None
                ],
            ),
        ]
    )
    if cfg.dump_level == 0:
        return out

    out["bimodules"] = []
    for word in words:
        m = reduced_braid_bimodule(word.mirror())
        hc = hochschild_complex(m, closure_shift(word)).complex
        entry: Dict[str, Any] = OrderedDict(
            [
                ("braid", str(word)),
                ("name", m.name),
                (
                    "basis",
                    [[e.name, e.left, e.right, list(e.grading)] for e in m.elements],
                ),
                ("hochschild", _complex_json(hc.generators, hc.differential.entries())),
            ]
        )
        if cfg.dump_level >= 2:
            t = tate_complex(box(m, m), closure_shift(word.squared()))
            gens = t.hochschild.complex.generators
            tate = _complex_json(gens, t.hochschild.complex.differential.entries())
            tate["tau"] = [
                [gens[g].name, gens[t.tau[g]].name]
                for g in range(len(gens))
                if g < t.tau[g]
            ]
            entry["tate"] = tate
        out["bimodules"].append(entry)
    return out


def run(cfg: RunConfig) -> int:
    """Computes what `cfg.mode` asks for and prints the report to stdout.

    # Returns

    `EXIT_OK`, or `EXIT_VIOLATION` when a checked statement fails.
    """
    cfg.validate()
    words = [parse_braid(text, cfg.strands) for text in cfg.braids]
    payload: Dict[str, Any] = OrderedDict(
        [("schema", OUTPUT_SCHEMA_VERSION), ("mode", cfg.mode)]
    )
    lines: List[str] = []
    status = EXIT_OK

    if cfg.mode == "skh":
        results = batch(words, cfg.jobs, functools.partial(_cached_skh, cfg.cache_dir))
        payload["results"] = [_skh_json(r) for r in results]
        for r in results:
            lines.append(
                "SKh({!r}; {}) on {} strands: {}".format(
                    str(r.word), r.winding, r.word.strands, poincare_polynomial(r)
                )
            )
    elif cfg.mode == "pages":
        reports = [_cached_report(cfg, w) for w in words]
        payload["results"] = [_report_json(r) for r in reports]
        for report in reports:
            lines.append("braid {!r}".format(str(report.word)))
            for page in report.tate.pages:
                lines.append("  E^{}: {}".format(page.index, _ranks_text(page.ranks())))
            lines.append("  stabilized at E^{}".format(report.tate.stabilized_at))
            for v in report.violations:
                lines.append("  VIOLATION: {}".format(v))
            if report.violations:
                status = EXIT_VIOLATION
    elif cfg.mode == "decat":
        payload["results"] = []
        for w in words:
            check = decat_check(w)
            payload["results"].append(
                OrderedDict(
                    [
                        ("braid", str(w)),
                        ("lhs", check.lhs.to_json()),
                        ("rhs", check.rhs.to_json()),
                        ("congruent", check.congruent),
                    ]
                )
            )
            lines.append(
                "{!r}: {} vs {} -> {}".format(str(w), check.lhs, check.rhs, check.congruent)
            )
            if not check.congruent:
                status = EXIT_VIOLATION
    elif cfg.mode == "pi-formal":
        steps = pi_formality_replay(cfg.n)
        payload["n"] = cfg.n
        payload["steps"] = [
            OrderedDict([("boundary", s.boundary), ("representative", s.representative)])
            for s in steps
        ]
        for k, s in enumerate(steps):
            lines.append(
                "step {}: boundary has {} terms, representative {}".format(
                    k + 1, len(s.boundary), " + ".join(s.representative) or "0"
                )
            )
    else:
        payload.update(_dump(cfg, words))
        lines.append(json.dumps(payload, indent=2))

    if cfg.output == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = get_args(argv)

    init_logging(args.log_level)

    get_logger().info("Running with args {}".format(args))

    ptitle("skh: {}".format(args.mode))

    gin.parse_config_files_and_bindings(None, args.gp, finalize_config=False)

    try:
        return run(RunConfig.from_args(args))
    except SkhError as e:
        get_logger().error("{}: {}".format(type(e).__name__, e))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
