"""Command-line interface: ``padicml <group> <command> [options]``.

Exit status is 0 on success, 1 on a domain error (bad data, impossible
request, malformed rational) and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import os
import sys
from fractions import Fraction

from . import io as pio
from . import quillian
from .balls import Ball, decompose, kraft_construct, kraft_sum, minimal_enclosing_ball, relate
from .classify.beam import append_constant, beam_search_train, split_bias
from .classify.linear import (
    ALWAYS_NEGATIVE,
    LinearClassifier,
    as_ball,
    ball_classifier,
    fit_best_ball_1d,
    fit_separable_1d,
    reduce_to_integers,
)
from .classify.poly import PolyClassifier, second_order_region
from .padic import RationalParseError, abs_p, digits, format_rational, is_prime, parse_rational, valuation
from .regress import fit_1d, fit_multi

ENV_PREFIX = "PADICML_"


class DomainError(Exception):
    pass


# -- argument helpers -----------------------------------------------------

def _env(name: str, default):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def _prime(text) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _positive(text) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _nonneg(text) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def _q(tokens):
    """Parse rational tokens; malformed ones surface as a domain error."""
    if isinstance(tokens, str):
        return parse_rational(tokens)
    return [parse_rational(t) for t in tokens]


def _fmt(x) -> str:
    return format_rational(x)


class Output:
    """Routes results to stdout or --out, as text, JSON or CSV."""

    def __init__(self, args):
        self.args = args

    def emit(self, text: str, data=None, rows=None):
        fmt = self.args.format
        if fmt == "json" and data is not None:
            text = json.dumps(data, indent=2, sort_keys=True)
        elif fmt == "csv" and rows is not None:
            buf = _io.StringIO()
            csv.writer(buf, lineterminator="\n").writerows(rows)
            text = buf.getvalue().rstrip("\n")
        out = getattr(self.args, "out", None)
        if out and not getattr(self.args, "_out_used", False):
            with open(out, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)


def _read_dataset(args, regression=False):
    if not args.inp:
        raise DomainError("--in is required")
    if args.inp == "-":
        return pio.read_dataset(sys.stdin, regression)
    with open(args.inp) as fh:
        return pio.read_dataset(fh, regression)


def _save_model(args, model):
    path = getattr(args, "model_out", None) or args.out
    if path:
        pio.save_model(model, path)
        if path == args.out:
            args._out_used = True


def _ball_arg(center, radius, p) -> Ball:
    return Ball.from_radius(_q(center), _q(radius), p)


# -- padic ----------------------------------------------------------------

def cmd_padic_eval(args, out):
    x = _q(args.x)
    v = valuation(x, args.p)
    a = abs_p(x, args.p)
    vtext = "inf" if x == 0 else str(v)
    out.emit(
        f"v_{args.p}({_fmt(x)}) = {vtext}\n|{_fmt(x)}|_{args.p} = {_fmt(a)}",
        {"x": _fmt(x), "p": args.p, "valuation": vtext, "abs": _fmt(a)},
        [["x", "p", "valuation", "abs"], [_fmt(x), args.p, vtext, _fmt(a)]],
    )


def cmd_padic_digits(args, out):
    exp = digits(_q(args.x), args.p, args.count)
    out.emit(
        exp.display(),
        {"p": args.p, "start": exp.start, "digits": list(exp.digits)},
        [["start"] + [f"d{i}" for i in range(len(exp.digits))], [exp.start] + list(exp.digits)],
    )


def cmd_padic_abs(args, out):
    a = abs_p(_q(args.x), args.p)
    out.emit(_fmt(a), {"abs": _fmt(a)}, [["abs"], [_fmt(a)]])


# -- balls and codes ------------------------------------------------------

def cmd_ball_relate(args, out):
    a = _ball_arg(args.center_a, args.radius_a, args.p)
    b = _ball_arg(args.center_b, args.radius_b, args.p)
    rel = relate(a, b).value
    out.emit(rel, {"a": a.to_json(), "b": b.to_json(), "relation": rel}, [["relation"], [rel]])


def cmd_ball_decompose(args, out):
    parts = decompose(_ball_arg(args.center, args.radius, args.p))
    out.emit(
        "\n".join(str(b) for b in parts),
        [b.to_json() for b in parts],
        [["center", "radius"]] + [[_fmt(b.center), _fmt(b.radius)] for b in parts],
    )


def cmd_ball_meb(args, out):
    b = minimal_enclosing_ball(_q(args.points), args.p)
    out.emit(str(b), b.to_json(), [["center", "radius"], [_fmt(b.center), _fmt(b.radius)]])


def cmd_kraft_check(args, out):
    s = kraft_sum(args.lengths, args.p)
    if s > 1:
        raise DomainError(f"{_fmt(s)} > 1: no prefix code")
    out.emit(f"{_fmt(s)} <= 1: prefix code exists", {"sum": _fmt(s), "ok": True}, [["sum", "ok"], [_fmt(s), 1]])


def cmd_kraft_construct(args, out):
    codes = kraft_construct(args.lengths, args.p)
    if codes is None:
        raise DomainError(f"{_fmt(kraft_sum(args.lengths, args.p))} > 1: no prefix code")
    out.emit(
        "\n".join(c.code for c in codes),
        [c.code for c in codes],
        [["length", "code"]] + [[len(c), c.code] for c in codes],
    )


# -- classification -------------------------------------------------------

def _scalars(xs):
    if any(len(x) != 1 for x in xs):
        raise DomainError("this command needs one-dimensional inputs")
    return [x[0] for x in xs]


def _ball_text(ball) -> str:
    return "always negative" if ball is ALWAYS_NEGATIVE else str(ball)


def cmd_classify_fit1d(args, out):
    xs, ys = _read_dataset(args)
    fit = fit_separable_1d(_scalars(xs), ys, args.p)
    _save_model(args, fit.minimal)
    lo = as_ball(fit.minimal)
    hi = as_ball(fit.maximal) if fit.maximal is not None else None
    out.emit(
        f"minimal {lo}\nmaximal {hi if hi is not None else 'unbounded'}",
        {"minimal": lo.to_json(), "maximal": hi.to_json() if hi else None},
        [["which", "center", "radius"], ["minimal", _fmt(lo.center), _fmt(lo.radius)]]
        + ([["maximal", _fmt(hi.center), _fmt(hi.radius)]] if hi else []),
    )


def _always_negative(p: int) -> LinearClassifier:
    return LinearClassifier((Fraction(0),), Fraction(1, p), p)


def cmd_classify_bestball(args, out):
    xs, ys = _read_dataset(args)
    res = fit_best_ball_1d(_scalars(xs), ys, args.p)
    model = _always_negative(args.p) if res.ball is ALWAYS_NEGATIVE else ball_classifier(res.ball)
    _save_model(args, model)
    rate = Fraction(res.errors, len(ys))
    ball = None if res.ball is ALWAYS_NEGATIVE else res.ball.to_json()
    out.emit(
        f"{_ball_text(res.ball)}\nerrors {res.errors}/{len(ys)} = {_fmt(rate)}",
        {"ball": ball, "errors": res.errors, "error_rate": _fmt(rate)},
        [["errors", "total", "error_rate"], [res.errors, len(ys), _fmt(rate)]],
    )


def cmd_classify_beam(args, out):
    xs, ys = _read_dataset(args)
    scaled, m = reduce_to_integers(xs, args.p)
    inputs = scaled if args.no_bias else append_constant(scaled)
    res = beam_search_train(inputs, ys, args.p, beam=args.beam, eps_max=args.eps_max, depth_max=args.depth_max)
    if res.digits is None:
        raise DomainError("beam search failed: every node was pruned")
    clf = res.classifier
    # undo the input rescaling x -> p^m x
    scale = Fraction(args.p) ** m
    w = tuple(e * scale for e in clf.w)
    if args.no_bias:
        clf = LinearClassifier(w, 0, args.p)
    else:
        clf = split_bias(LinearClassifier(w[:-1] + (clf.w[-1],), 0, args.p))
    _save_model(args, clf)
    status = "converged" if res.converged else "failure"
    out.emit(
        f"{status} at depth {res.depth}: errors {res.errors}/{len(ys)}\n"
        f"w = [{', '.join(_fmt(e) for e in clf.w)}]\nb = {_fmt(clf.b)}",
        {"converged": res.converged, "depth": res.depth, "errors": res.errors,
         "model": pio.model_to_json(clf)},
        [["converged", "depth", "errors"], [int(res.converged), res.depth, res.errors]],
    )
    if not res.converged:
        return 1
    return 0


def cmd_classify_predict(args, out):
    model = pio.load_model(args.model)
    xs, ys = _read_dataset(args)
    labels = [model.predict(x if not isinstance(model, PolyClassifier) else x[0]) for x in xs]
    wrong = sum(a != b for a, b in zip(labels, ys))
    out.emit(
        "\n".join(str(v) for v in labels) + f"\nerrors {wrong}/{len(ys)}",
        {"labels": labels, "errors": wrong, "total": len(ys)},
        [["y_pred", "y"]] + [[a, b] for a, b in zip(labels, ys)],
    )


# -- polynomials ----------------------------------------------------------

def cmd_poly_region(args, out):
    clf = PolyClassifier(_q(args.c), _q(args.roots), args.p)
    _save_model(args, clf)
    region = second_order_region(clf)
    out.emit(
        "\n".join(str(b) for b in region.balls),
        [b.to_json() for b in region.balls],
        [["center", "radius"]] + [[_fmt(b.center), _fmt(b.radius)] for b in region.balls],
    )


def cmd_poly_predict(args, out):
    if args.model:
        clf = pio.load_model(args.model)
        if not isinstance(clf, PolyClassifier):
            raise DomainError("model is not a polynomial classifier")
    else:
        if args.c is None or args.roots is None:
            raise DomainError("give --model or both --c and --roots")
        clf = PolyClassifier(_q(args.c), _q(args.roots), args.p)
    xs = _q(args.x)
    labels = [clf.predict(x) for x in xs]
    out.emit(
        "\n".join(f"{_fmt(x)} {y}" for x, y in zip(xs, labels)),
        {_fmt(x): y for x, y in zip(xs, labels)},
        [["x", "y"]] + [[_fmt(x), y] for x, y in zip(xs, labels)],
    )


# -- regression -----------------------------------------------------------

def _emit_regression(args, out, model):
    _save_model(args, LinearClassifier(model.w, model.b, model.p))
    warn = "\nwarning: singular subsets skipped; optimality unverified" if model.hypotheses_unverified else ""
    out.emit(
        f"w = [{', '.join(_fmt(e) for e in model.w)}]\nb = {_fmt(model.b)}\n"
        f"norm = {_fmt(model.achieved_norm)}\nsupport = {list(model.support)}{warn}",
        {"w": pio.vector_to_json(model.w), "b": _fmt(model.b), "p": model.p,
         "achieved_norm": _fmt(model.achieved_norm), "support": list(model.support),
         "hypotheses_unverified": model.hypotheses_unverified},
        [["b", "achieved_norm"] + [f"w{i}" for i in range(len(model.w))],
         [_fmt(model.b), _fmt(model.achieved_norm)] + [_fmt(e) for e in model.w]],
    )


def cmd_regress_fit1d(args, out):
    xs, ys = _read_dataset(args, regression=True)
    _emit_regression(args, out, fit_1d(_scalars(xs), ys, args.p))


def cmd_regress_fit(args, out):
    xs, ys = _read_dataset(args, regression=True)
    _emit_regression(args, out, fit_multi(xs, ys, args.p))


# -- Quillian network -----------------------------------------------------

def cmd_quillian_generate(args, out):
    net = quillian.SemanticNetwork()
    lines = [
        json.dumps({
            "entity": net.entities[pr.entity],
            "relation": net.relations[pr.relation],
            "attribute": net.attributes[pr.attribute].name,
            "y": pr.label,
        })
        for pr in quillian.generate_dataset(net)
    ]
    target = open(args.out, "w") if args.out else sys.stdout
    try:
        target.write("\n".join(lines) + "\n")
    finally:
        if args.out:
            target.close()


def cmd_quillian_verify(args, out):
    correct, total, wrong = quillian.verify()
    net = quillian.SemanticNetwork()
    text = f"{correct}/{total} correct"
    for pr in wrong:
        text += f"\nmismatch: {net.entities[pr.entity]} {net.relations[pr.relation]} {net.attributes[pr.attribute].name}"
    out.emit(text, {"correct": correct, "total": total}, [["correct", "total"], [correct, total]])
    return 0 if correct == total else 1


def experiment_report(results: dict, cfg: quillian.ExperimentConfig) -> dict:
    means = quillian.mean_test_error(results)
    return {
        "prng": "python random.Random (Mersenne Twister)",
        "p": quillian.P,
        "beam": cfg.beam,
        "eps_max": cfg.eps_max,
        "depth_max": cfg.depth_max,
        "train_share": cfg.train_share,
        "seeds": list(cfg.seeds),
        "results": {
            str(f): {
                str(s): {
                    "train_err": _fmt(r.train_err),
                    "test_err": _fmt(r.test_err),
                    "failures": r.failures,
                }
                for s, r in by_seed.items()
            }
            for f, by_seed in results.items()
        },
        "mean_test_err": {str(f): _fmt(m) for f, m in means.items()},
    }


def experiment_csv(results: dict) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["fraction", "seed", "train_err", "test_err", "failures"])
    for f, by_seed in results.items():
        for s, r in by_seed.items():
            w.writerow([f, s, _fmt(r.train_err), _fmt(r.test_err), ";".join(r.failures)])
    return buf.getvalue()


def cmd_quillian_experiment(args, out):
    cfg = quillian.ExperimentConfig(
        fractions=tuple(args.fractions),
        seeds=tuple(range(args.seed, args.seed + args.seeds)),
        beam=args.beam,
        eps_max=args.eps_max,
        depth_max=args.depth_max,
    )
    results = quillian.run_experiment(cfg)
    report = json.dumps(experiment_report(results, cfg), indent=2, sort_keys=True) + "\n"
    table = experiment_csv(results)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report)
        csv_path = args.csv or os.path.splitext(args.out)[0] + ".csv"
        with open(csv_path, "w") as fh:
            fh.write(table)
        means = quillian.mean_test_error(results)
        print("\n".join(f"fraction {f}: mean test error {_fmt(m)}" for f, m in means.items()))
    else:
        sys.stdout.write(table if args.format == "csv" else report)
        if args.csv:
            with open(args.csv, "w") as fh:
                fh.write(table)


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=_prime, default=_env("p", "2"), help="prime (default 2)")
    common.add_argument("--beam", type=_positive, default=_env("beam", "8"), help="beam size k")
    common.add_argument("--eps-max", type=_nonneg, default=_env("eps-max", "0"), help="error budget")
    common.add_argument("--depth-max", type=_positive, default=_env("depth-max", "12"), help="maximum digit depth")
    common.add_argument("--seed", type=_nonneg, default=_env("seed", "0"), help="first PRNG seed")
    common.add_argument("--in", dest="inp", default=_env("in", None), help="input dataset (JSON lines, - for stdin)")
    common.add_argument("--out", default=_env("out", None), help="output file")
    common.add_argument("--format", choices=("text", "json", "csv"), default=_env("format", "text"))

    parser = argparse.ArgumentParser(prog="padicml", description="p-adic linear models and tools")
    groups = parser.add_subparsers(dest="group", required=True)

    def add(group_parser, name, func, help_text):
        sp = group_parser.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    g = groups.add_parser("padic", help="valuations, absolute values, digits").add_subparsers(dest="cmd", required=True)
    add(g, "eval", cmd_padic_eval, "valuation and absolute value").add_argument("x")
    add(g, "abs", cmd_padic_abs, "absolute value").add_argument("x")
    sp = add(g, "digits", cmd_padic_digits, "digit expansion")
    sp.add_argument("--count", type=_positive, default=8)
    sp.add_argument("x")

    g = groups.add_parser("ball", help="closed balls").add_subparsers(dest="cmd", required=True)
    sp = add(g, "relate", cmd_ball_relate, "relation between two balls")
    for name in ("center_a", "radius_a", "center_b", "radius_b"):
        sp.add_argument(name)
    sp = add(g, "decompose", cmd_ball_decompose, "split into p child balls")
    sp.add_argument("center")
    sp.add_argument("radius")
    add(g, "meb", cmd_ball_meb, "minimal enclosing ball").add_argument("points", nargs="+")

    g = groups.add_parser("kraft", help="prefix codes").add_subparsers(dest="cmd", required=True)
    add(g, "check", cmd_kraft_check, "Kraft inequality").add_argument("lengths", type=_positive, nargs="+")
    add(g, "construct", cmd_kraft_construct, "build a prefix code").add_argument("lengths", type=_positive, nargs="+")

    g = groups.add_parser("classify", help="linear classifiers").add_subparsers(dest="cmd", required=True)
    add(g, "fit1d", cmd_classify_fit1d, "minimal/maximal separating balls")
    add(g, "bestball", cmd_classify_bestball, "best single ball")
    add(g, "beam", cmd_classify_beam, "beam-search training").add_argument(
        "--no-bias", action="store_true", help="do not learn a bias term")
    for sp in g.choices.values():
        sp.add_argument("--model-out", help="where to write the fitted model")
    add(g, "predict", cmd_classify_predict, "apply a saved model").add_argument("--model", required=True)

    g = groups.add_parser("poly", help="polynomial classifiers").add_subparsers(dest="cmd", required=True)
    sp = add(g, "region", cmd_poly_region, "positive region of a quadratic")
    sp.add_argument("--c", required=True)
    sp.add_argument("roots", nargs="+")
    sp.add_argument("--model-out")
    sp = add(g, "predict", cmd_poly_predict, "evaluate at points")
    sp.add_argument("--c")
    sp.add_argument("--roots", nargs="+")
    sp.add_argument("--model")
    sp.add_argument("x", nargs="+")

    g = groups.add_parser("regress", help="sup-norm regression").add_subparsers(dest="cmd", required=True)
    add(g, "fit1d", cmd_regress_fit1d, "one-dimensional fit").add_argument("--model-out")
    add(g, "fit", cmd_regress_fit, "multi-dimensional fit").add_argument("--model-out")

    g = groups.add_parser("quillian", help="semantic network").add_subparsers(dest="cmd", required=True)
    add(g, "generate", cmd_quillian_generate, "write the labelled propositions")
    add(g, "verify", cmd_quillian_verify, "check the reference network")
    sp = add(g, "experiment", cmd_quillian_experiment, "train/test experiment")
    sp.add_argument("--seeds", type=_positive, default=5, help="number of consecutive seeds")
    sp.add_argument("--fractions", type=float, nargs="+", default=[0.6, 0.8, 1.0])
    sp.add_argument("--csv", help="CSV summary path (default: beside --out)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._out_used = False
    try:
        status = args.func(args, Output(args))
    except RationalParseError as exc:
        print(f"error: malformed rational {exc.token!r}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(str(exc))
        return 1
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
