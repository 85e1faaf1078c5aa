"""Command-line front end: ``confhom <command> [options]``."""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from math import comb, factorial
from pathlib import Path

from . import certificates
from .complex import TwoComplexPresentation, build_bar_complex, closed_surface_homology, hn_presentation, kernel_K
from .graded import TensorElt, insertion_span_membership, johnson_a, scfg_image, sn_quotient_membership
from .magnus import icfg_kernel
from .shuffle import basis_count, render_basis
from .surfaces import EndoSpec, SurfaceSpec, act_endomorphism, delta_zeta

SCHEMA = 1
BUDGET = 10**6


class BadInput(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    params: dict = field(default_factory=dict)
    fmt: str = "text"
    threads: int = 1
    force: bool = False


def _bar_size(r: int, n: int) -> int:
    # ordered block sequences on k labelled points: k! 2^(k-1)
    total = 0
    for k in range(n + 1):
        seqs = 1 if k == 0 else factorial(k) * 2 ** (k - 1)
        total += comb(n, k) * seqs * basis_count(r, n - k)
    return total


def estimate(cfg: JobConfig) -> int:
    p = cfg.params
    c = cfg.command
    if c == "homology":
        return _bar_size(2 * p["genus"] + p["punctures"] - 1, p["points"])
    if c == "closed":
        return 2 * _bar_size(2 * p["genus"], p["points"])
    if c in ("kernel", "act"):
        return basis_count(2 * p["genus"] + p["punctures"] - 1, p.get("points", p.get("order")))
    if c == "icfg":
        return basis_count(2 * p["genus"], p["order"])
    if c == "johnson":
        return max((2 * p["genus"]) ** p["n"], basis_count(2 * p["genus"], p["n"]))
    if c == "delta-zeta":
        return basis_count(2 * p["genus"], p["order"])
    return 0


def _inv(inv) -> dict:
    return {"rank": inv.free_rank, "torsion": list(inv.torsion)}


def _compact(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _surface(params) -> SurfaceSpec:
    if params["punctures"] < 1:
        raise BadInput("an open surface needs at least one puncture")
    return SurfaceSpec(params["genus"], params["punctures"] - 1)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise BadInput(f"cannot read {path}: {exc.strerror}") from exc


# -- commands ------------------------------------------------------------------------

def cmd_homology(p: dict):
    s = _surface(p)
    n = p["points"]
    cx = build_bar_complex(s.presentation, n)
    codims = [p["codim"]] if p["codim"] is not None else list(range(n + 1))
    groups = []
    for k in codims:
        inv = cx.homology(n + k) if 0 <= k <= n else None
        groups.append({"degree": n + k, "codim": k, **(_inv(inv) if inv else {"rank": 0, "torsion": []})})
    if p["codim"] is not None:
        g = groups[0]
        text = _compact({"rank": g["rank"], "torsion": g["torsion"]})
    else:
        text = "\n".join(f"H^cl_{g['degree']}: " + _compact({"rank": g["rank"], "torsion": g["torsion"]})
                         for g in groups)
    return {"groups": groups}, text


def cmd_group(p: dict):
    pres = TwoComplexPresentation.parse(_read(p["presentation"]))
    inv = hn_presentation(pres, p["points"]).invariants
    return _inv(inv), _compact(_inv(inv))


def cmd_delta_zeta(p: dict):
    x = delta_zeta(p["genus"], p["order"])
    alphabet = SurfaceSpec(p["genus"]).alphabet
    terms = [[render_basis(b, alphabet), c] for b, c in sorted(x.terms.items())]
    return {"terms": terms}, x.render(alphabet)


def cmd_kernel(p: dict):
    s = _surface(p)
    _, inv = kernel_K(s.presentation, p["order"])
    return _inv(inv), _compact(_inv(inv))


def cmd_icfg(p: dict):
    inv, _ = icfg_kernel(SurfaceSpec(p["genus"]).presentation, p["order"])
    return _inv(inv), _compact(_inv(inv))


def cmd_johnson(p: dict):
    g, n = p["genus"], p["n"]
    alphabet = SurfaceSpec(g).alphabet
    if p["c"]:
        c = [TensorElt.parse(w, alphabet) for w in p["c"].split(",")]
    else:
        c = [TensorElt.letter(i % 2) for i in range(n - 2)]
    if any(x.degree != 1 for x in c):
        raise BadInput("--c entries must be degree one")
    a = johnson_a(g, n, c)
    report = {
        "a": a.render(alphabet),
        "zero_mod_mu": sn_quotient_membership(g, a),
        "in_insertion_span": insertion_span_membership(g, a),
        "scfg_image": list(scfg_image(SurfaceSpec(g).presentation, a)),
    }
    shown = dict(report, scfg_image="zero" if not any(report["scfg_image"]) else report["scfg_image"])
    return report, "\n".join(f"{k}: {v}" for k, v in shown.items())


def cmd_closed(p: dict):
    groups = [{"degree": d, **_inv(inv)} for d, inv in enumerate(closed_surface_homology(p["genus"], p["points"]))]
    text = "\n".join(f"H^cl_{x['degree']}: " + _compact({"rank": x["rank"], "torsion": x["torsion"]}) for x in groups)
    return {"groups": groups}, text


def cmd_act(p: dict):
    s = _surface(p)
    e = EndoSpec.parse(_read(p["map"]), s)
    res = act_endomorphism(e, p["points"])
    report = {"matrix": [list(c) for c in res["matrix"]], "is_identity": res["is_identity"],
              "invariants": _inv(res["invariants"])}
    return report, f"identity: {res['is_identity']}\n" + "\n".join(" ".join(map(str, c)) for c in report["matrix"])


def cmd_paper_check(p: dict):
    if p["inject_sign_flip"]:
        with certificates.sign_flip():
            items = certificates.run_all(p["only"])
    else:
        items = certificates.run_all(p["only"])
    lines = [f"{'PASS' if i['ok'] else 'FAIL'}  {i['name']:<18} {i['seconds']:8.3f}s  {i['detail']}" for i in items]
    return {"items": items, "ok": all(i["ok"] for i in items)}, "\n".join(lines)


COMMANDS = {
    "homology": cmd_homology,
    "group": cmd_group,
    "delta-zeta": cmd_delta_zeta,
    "kernel": cmd_kernel,
    "icfg": cmd_icfg,
    "johnson": cmd_johnson,
    "closed": cmd_closed,
    "act": cmd_act,
    "paper-check": cmd_paper_check,
}


# -- argument handling ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise BadInput(message)


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--threads", type=_pos, default=1, help="accepted; computation is single-threaded")
    common.add_argument("--force", action="store_true", help=f"run even if the basis estimate exceeds {BUDGET:.0e}")

    parser = _Parser(prog="confhom", description="Closed-support homology of configuration spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    c = add("homology", "H^cl_{n+k} of conf_n(genus g surface minus P points)")
    c.add_argument("--genus", type=_nonneg, required=True)
    c.add_argument("--punctures", type=_pos, required=True)
    c.add_argument("--points", type=_pos, required=True)
    c.add_argument("--codim", type=int)

    c = add("group", "H_n(U) for a presentation file")
    c.add_argument("--presentation", required=True)
    c.add_argument("--points", type=_nonneg, required=True)

    c = add("delta-zeta", "the order-n part of the expansion of the boundary word")
    c.add_argument("--genus", type=_nonneg, required=True)
    c.add_argument("--order", type=_nonneg, required=True)

    c = add("kernel", "K_n = ker(H_n(U1) -> H_n(U))")
    c.add_argument("--genus", type=_nonneg, required=True)
    c.add_argument("--punctures", type=_pos, required=True)
    c.add_argument("--order", type=_nonneg, required=True)

    c = add("icfg", "kernel of the augmentation-ideal part in degree n")
    c.add_argument("--genus", type=_nonneg, required=True)
    c.add_argument("--order", type=_pos, required=True)

    c = add("johnson", "the bracket element a and its image")
    c.add_argument("--genus", type=_pos, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--c", help="comma separated degree-one elements, e.g. 'a1,a-1 + a2'")

    c = add("closed", "homology of conf_n of a closed surface")
    c.add_argument("--genus", type=_nonneg, required=True)
    c.add_argument("--points", type=_pos, required=True)

    c = add("act", "action of a boundary-fixing endomorphism on H_n(U)")
    c.add_argument("--genus", type=_nonneg, required=True)
    c.add_argument("--punctures", type=_pos, required=True)
    c.add_argument("--map", required=True)
    c.add_argument("--points", type=_nonneg, required=True)

    c = add("paper-check", "run the certificate suite")
    c.add_argument("--only", action="append", choices=[n for n, _ in certificates.CHECKS])
    c.add_argument("--inject-sign-flip", action="store_true", help=argparse.SUPPRESS)
    return parser


def parse_job(argv) -> JobConfig:
    ns = vars(build_parser().parse_args(argv))
    cfg = JobConfig(ns.pop("command"), fmt=ns.pop("format"), threads=ns.pop("threads"), force=ns.pop("force"))
    cfg.params = ns
    if cfg.command == "johnson" and ns["n"] < 3:
        raise BadInput("--n must be at least 3")
    return cfg


def run(argv=None) -> tuple[int, dict | None, str]:
    """Exit code, JSON report and text rendering."""
    try:
        cfg = parse_job(argv)
        size = estimate(cfg)
        if size > BUDGET and not cfg.force:
            raise BadInput(f"estimated basis size {size} exceeds {BUDGET}; pass --force to run anyway")
        t0 = time.perf_counter()
        report, text = COMMANDS[cfg.command](cfg.params)
    except (BadInput, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        return 2, None, f"confhom: error: {msg}"
    except AssertionError as exc:
        return 1, None, f"confhom: assertion failed: {exc}"
    report = {"schema": SCHEMA, "command": cfg.command, "params": cfg.params, **report}
    code = 1 if report.get("ok") is False else 0
    if cfg.fmt == "json":
        return code, report, _compact(report)
    if cfg.command == "paper-check":
        text += f"\n{sum(i['ok'] for i in report['items'])}/{len(report['items'])} passed" \
                f" in {time.perf_counter() - t0:.2f}s"
    return code, report, text


def main(argv=None) -> int:
    code, _, text = run(argv)
    print(text, file=sys.stderr if code == 2 else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
