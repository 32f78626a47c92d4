"""Command-line surface.

Subcommands: analyze, certify, verify, partition, render.  All file
formats carry a leading format/version pair; exact numbers serialize as
strings, approximations carry their tolerance.  Exit codes of analyze:
0 equivalent, 1 not equivalent, 2 unknown, 3 error.
"""

import argparse
import json
import os
import sys

from . import specfile, cylsets, patches, render
from .exactnum import ExactError, moran_dimension
from .ifs import SpecError, canonical_dust
from .decide import decide, SearchBudget, check_necessary
from .certify import (build_certificate, cert_to_doc, verify_cert_doc,
                      distortion_report, expand_map, verify_expansion,
                      CertificateError)

REPORT_FORMAT = "lipeq-report"
REPORT_VERSION = 1


def _budget(args):
    raw = args.budget or os.environ.get("LIPEQ_BUDGET")
    if not raw:
        return SearchBudget()
    parts = raw.split(",")
    if len(parts) != 2:
        raise SystemExit("--budget expects MAX_WORD,MAX_EXP")
    return SearchBudget(int(parts[0]), int(parts[1]))


def _emit(doc, path=None):
    text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _value_str(v):
    return specfile.format_value(v)


def analyze_report(spec, budget):
    st = spec.touching
    verdict = decide(spec, budget)
    nec = check_necessary(spec)
    report = {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "spec_digest": specfile.doc_digest(specfile.spec_to_doc(spec)),
        "n": spec.n,
        "role": spec.role,
        "ratios": [specfile.format_ratio(r) for r in spec.ratios],
        "touching_letters": sorted(st.letters) if st else [],
        "first_free_letter": st.alpha if st else None,
        "last_free_letter": st.beta if st else None,
        "dimension": {"value": moran_dimension(spec.ratios,
                                               env=spec.bases),
                      "exactness": "approx(1e-12)"},
        "necessary_condition": {
            "holds": nec.ok,
            "dependence": list(nec.pq) if nec.pq else None,
            "detail": nec.detail,
            "exactness": "exact",
        },
        "witnesses": [verdict.witnesses[i].as_dict()
                      for i in sorted(verdict.witnesses)],
        "unresolved_letters": sorted(verdict.unresolved),
        "budget": {"max_word": budget.max_word, "max_exp": budget.max_exp},
        "verdict": verdict.status,
        "reason": verdict.reason,
    }
    return report, verdict


def cmd_analyze(args):
    spec = specfile.load_spec(args.specfile)
    budget = _budget(args)
    report, verdict = analyze_report(spec, budget)
    _emit(report, args.output)
    return {"equivalent": 0, "not_equivalent": 1, "unknown": 2}[
        verdict.status]


def cmd_certify(args):
    spec = specfile.load_spec(args.specfile)
    verdict = decide(spec, _budget(args))
    if verdict.status != "equivalent":
        sys.stderr.write("cannot certify: verdict is %s (%s)\n"
                         % (verdict.status, verdict.reason))
        return 1 if verdict.status == "not_equivalent" else 2
    cert = build_certificate(spec, verdict)
    _emit(cert_to_doc(spec, cert), args.output)
    return 0


def cmd_verify(args):
    spec = specfile.load_spec(args.specfile)
    with open(args.cert) as fh:
        doc = json.load(fh)
    cert = verify_cert_doc(spec, doc)
    out = {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "certificate_valid": True,
        "vertices": len(cert.vertices),
        "depth": args.depth,
    }
    if args.depth > 0:
        pieces = expand_map(spec, cert, args.depth)
        verify_expansion(spec, cert, pieces)
        c_low, c_high = distortion_report(spec, cert, args.depth,
                                          sample_pairs=args.pairs)
        out["leaf_pieces"] = len(pieces)
        out["distortion"] = {"c_low": c_low, "c_high": c_high,
                             "exactness": "approx(float64)"}
    _emit(out, args.output)
    return 0


def cmd_partition(args):
    spec = specfile.load_spec(args.specfile)
    k = args.k
    fam = args.family
    doc = {"format": REPORT_FORMAT, "version": REPORT_VERSION,
           "family": fam, "k": k}
    if fam == "C":
        sets = patches.c_family(spec, k)
        doc["sets"] = [{"words": [list(w) for w in ws]} for ws in sets]
    elif fam == "E":
        mu = args.mu
        if mu is None:
            raise SystemExit("--mu m1,m2,m3,m4 required for family E")
        from fractions import Fraction
        muv = [Fraction(x) for x in mu.split(",")]
        levels = patches.e_family(spec, k)
        doc["levels"] = [[{"words": [list(w) for w in ws]} for ws in lvl]
                         for lvl in levels]
        doc["measure_ratios"] = sorted(
            str(r) for r in patches.e_ratio_set(spec, k, muv))
    else:
        if fam == "S":
            pieces = patches.partition_S(spec, k)[-1]
        else:
            pieces = patches.partition_T(spec, k)
        doc["pieces"] = [{"words": [list(w) for w in p.words],
                          "lo": _value_str(p.lo),
                          "hi": _value_str(p.hi)} for p in pieces]
        doc["norm"] = {"value": _value_str(
            patches.partition_norm(spec, pieces)), "exactness": "exact"}
    _emit(doc, args.output)
    return 0


def cmd_render(args):
    spec = specfile.load_spec(args.specfile)
    svg = render.render_svg(spec, levels=args.levels, width=args.width,
                            with_dust=args.with_dust)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="lipeq",
        description="Decide and certify Lipschitz equivalence of "
                    "touching self-similar sets with their dust "
                    "counterparts.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run the decision pipeline")
    p.add_argument("specfile")
    p.add_argument("--budget", help="MAX_WORD,MAX_EXP search budget")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("certify", help="build a decomposition certificate")
    p.add_argument("specfile")
    p.add_argument("--budget")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="validate a certificate and bound "
                                      "the distortion")
    p.add_argument("specfile")
    p.add_argument("--cert", required=True)
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--pairs", type=int, default=4000)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("partition", help="dump a partition family")
    p.add_argument("specfile")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--family", choices=("C", "S", "T", "E"), required=True)
    p.add_argument("--mu", help="measure weights for family E")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("render", help="draw construction levels as SVG")
    p.add_argument("specfile")
    p.add_argument("--levels", type=int, default=2)
    p.add_argument("--width", type=int, default=640)
    p.add_argument("--with-dust", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, CertificateError, ExactError) as e:
        sys.stderr.write("error: %s\n" % e)
        return 3
    except OSError as e:
        sys.stderr.write("error: %s\n" % e)
        return 3


if __name__ == "__main__":
    sys.exit(main())
