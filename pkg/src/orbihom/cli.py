"""Command-line interface: ``orbihom <verb> ...``.

Exit codes: 0 success, 1 validation or verification failure, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .complex import SimplexClass, WeightedComplex, cartesian_product, class_counts
from .errors import InvalidSpec, OrbihomError, ParseError
from .exactalg import HomologyGroup
from .generators import ExampleSpec, generate
from .homology import ST, WT, CoefficientRing, Theory, homology, homology_with_coefficients
from .subdivision import iterated_subdivision, pi_sd_is_identity, verify_subdivision_invariance
from .textio import format_complex, read_complex
from .verify import SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def validation_report(K: WeightedComplex) -> dict:
    counts = class_counts(K)
    return {
        "ok": True,
        "divisibly_weighted": K.divisibly_weighted,
        "face_divisibility": True,
        "vertices": K.n_vertices,
        "simplices": [K.count(n) for n in range(K.dim + 1)],
        "classes": {c.value: counts[c] for c in SimplexClass},
    }


def _format_report(rep: dict) -> str:
    classes = " ".join(f"{k}={','.join(map(str, v))}" for k, v in rep["classes"].items())
    return (f"ok: {'yes' if rep['ok'] else 'no'}; face-divisibility: {'yes' if rep['face_divisibility'] else 'no'}; "
            f"divisibly-weighted: {'yes' if rep['divisibly_weighted'] else 'no'}; "
            f"simplices per dimension: {','.join(map(str, rep['simplices']))}; {classes}")


@dataclass
class ResultDocument:
    """Everything one ``homology`` run reports; ``to_dict``/``from_dict`` round-trip exactly."""

    input_kind: str
    input: str
    theory: str
    coefficients: str
    groups: list[HomologyGroup]
    validation: dict = field(default_factory=dict)
    witnesses: list[list[dict]] | None = None
    timing: float | None = None

    def to_dict(self) -> dict:
        d = {
            "input": {"kind": self.input_kind, "value": self.input},
            "theory": self.theory,
            "coefficients": self.coefficients,
            "groups": [g.to_dict() for g in self.groups],
            "validation": self.validation,
        }
        if self.witnesses is not None:
            d["witnesses"] = self.witnesses
        if self.timing is not None:
            d["timing"] = self.timing
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ResultDocument":
        return cls(d["input"]["kind"], d["input"]["value"], d["theory"], d["coefficients"],
                   [HomologyGroup.from_dict(g) for g in d["groups"]], d.get("validation", {}),
                   d.get("witnesses"), d.get("timing"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ResultDocument":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        sym = "H" if self.theory == "wt" else "h"
        lines = [f"input: {self.input_kind} {self.input}", f"theory: {self.theory}",
                 f"coefficients: {self.coefficients}"]
        if self.validation:
            lines.append("validation: " + _format_report(self.validation))
        for j, g in enumerate(self.groups):
            lines.append(f"{sym}_{j}: {g}")
            for w in (self.witnesses[j] if self.witnesses else []):
                order = "infinite" if w["order"] == 0 else str(w["order"])
                chain = " ".join(f"{c:+d}*[{s}]" for s, c in w["chain"].items()) or "0"
                lines.append(f"  generator (order {order}): {chain}")
        if self.timing is not None:
            lines.append(f"time: {self.timing:.3f}s")
        return "\n".join(lines)


def load_input(text: str) -> tuple[str, str, WeightedComplex]:
    """A path to a complex file, or an example signature such as ``teardrop:5``."""
    path = Path(text)
    if path.exists():
        return "file", text, read_complex(path)
    if ":" in text:
        spec = ExampleSpec.parse(text)
        return "example", str(spec), generate(spec)
    raise FileNotFoundError(f"{text}: no such file, and not an example signature")


def compute_document(kind: str, source: str, K: WeightedComplex, theory: Theory,
                     ring: CoefficientRing, witnesses: bool = False, timing: bool = False) -> ResultDocument:
    t0 = time.perf_counter()
    if ring.kind == "Z":
        prof = homology(K, theory, witnesses=witnesses)
    else:
        prof = homology_with_coefficients(K, theory, ring)
    wit = None
    if witnesses and prof.witnesses is not None:
        wit = []
        for j, gens in enumerate(prof.witnesses):
            basis = prof.basis[j]
            wit.append([{"order": order,
                         "chain": {" ".join(basis[i]): c for i, c in enumerate(chain) if c}}
                        for chain, order in gens])
    elapsed = time.perf_counter() - t0 if timing else None
    return ResultDocument(kind, source, theory.name, str(ring), prof.groups, validation_report(K), wit, elapsed)


def cmd_validate(args) -> int:
    K = read_complex(args.path)
    rep = validation_report(K)
    print(json.dumps(rep, sort_keys=True) if args.json else _format_report(rep))
    return EXIT_OK


def cmd_homology(args) -> int:
    kind, source, K = load_input(args.input)
    doc = compute_document(kind, source, K, args.theory, args.coeff, args.witnesses, args.timing)
    print(doc.to_json() if args.json else doc.to_text())
    return EXIT_OK


def _subdivision_checks(records) -> list[tuple[str, bool]]:
    out = []
    for m, rec in enumerate(records, start=1):
        out.append((f"Sd^{m}: pi o Sd = id on chains", pi_sd_is_identity(rec)))
        for theory in (WT, ST):
            out.append((f"Sd^{m}: {theory.name} invariance", verify_subdivision_invariance(rec.source, theory, rec)))
    return out


def cmd_subdivide(args) -> int:
    K = read_complex(args.path)
    records = iterated_subdivision(K, args.times)
    text = format_complex(records[-1].result, header=f"barycentric subdivision x{args.times} of {args.path}")
    report = sys.stdout if args.output else sys.stderr
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    ok = True
    if args.check:
        for name, passed in _subdivision_checks(records):
            ok &= passed
            print(f"{'PASS' if passed else 'FAIL'} {name}", file=report)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_product(args) -> int:
    P = cartesian_product(read_complex(args.first), read_complex(args.second))
    text = format_complex(P, header=f"product of {args.first} and {args.second}")
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = run_suites(args.suite, args.seed, args.cases)
    for r in reports:
        print(r.format())
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def cmd_example(args) -> int:
    spec = ExampleSpec.parse(args.spec)
    K = generate(spec)
    if args.theory is None:
        sys.stdout.write(format_complex(K, header=f"example {spec}"))
        return EXIT_OK
    doc = compute_document("example", str(spec), K, args.theory, args.coeff, args.witnesses, args.timing)
    print(doc.to_json() if args.json else doc.to_text())
    return EXIT_OK


def _theory(text: str) -> Theory:
    try:
        return Theory.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _ring(text: str) -> CoefficientRing:
    try:
        return CoefficientRing.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _add_result_options(p, theory_default):
    p.add_argument("--theory", type=_theory, default=theory_default,
                   help="wt, st or st-stage=N (N may be inf)")
    p.add_argument("--coeff", type=_ring, default=CoefficientRing("Z"), help="Z, Q, Fp=<p> or Zm=<m>")
    p.add_argument("--witnesses", action="store_true", help="print representative cycles (integer coefficients)")
    p.add_argument("--json", action="store_true", help="emit the result document as JSON")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbihom", description="Weighted and stratified homology of weighted complexes")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a complex file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("homology", help="compute homology of a file or example signature")
    p.add_argument("input", help="complex file or signature such as sphere:6,12,27")
    _add_result_options(p, WT)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("subdivide", help="barycentric subdivision")
    p.add_argument("path")
    p.add_argument("--times", "-m", type=_positive, default=1)
    p.add_argument("--check", action="store_true", help="verify invariance after each subdivision")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("product", help="staircase product of two complexes")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("verify", help="run seeded property suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=_positive, default=50)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("example", help="print a generated example complex, or its homology with --theory")
    p.add_argument("spec", help="e.g. teardrop:5, football:4,6, surface:g=2;k=3,3")
    _add_result_options(p, None)
    p.set_defaults(func=cmd_example)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InvalidSpec, FileNotFoundError, IsADirectoryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OrbihomError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
