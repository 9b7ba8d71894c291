"""Per-pair verification pipeline and its text / JSON / CSV renderings."""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

import mpmath

from .capitulation import (
    InvalidPair,
    computed_kernel,
    eligibility,
    order_two_check,
    predicted_kernels,
    thm17_count,
)
from .forms import kuroda_check
from .identities import verify_all
from .multiquad import Field
from .pell import fund_unit
from .units import genus_unit_subgroup, norm_index, sfu_classify, unit_index_K3, verify_sfu

__all__ = [
    "CHECKS",
    "CSV_COLUMNS",
    "SCHEMA",
    "PairReport",
    "csv_row",
    "render",
    "render_csv",
    "run_pair",
]

SCHEMA = 1
CHECKS = ("kernels", "order2", "kuroda", "identities")
TOWERS = ("K1", "K2", "K3")
CSV_COLUMNS = (
    "p1", "p2", "eligible", "sym_pp", "sym_2p1", "sym_2p2", "norm_eps_d", "q3",
    "ker_K1", "ker_K2", "ker_K3", "ker_genus", "thm17_K1", "thm17_K2", "thm17_K3",
    "kuroda_v2", "overall",
)


@dataclass
class PairReport:
    """Everything checked for one ordered pair. Plain JSON-ready values only."""

    pair: list[int]
    symbols: dict[str, int]
    eligible: bool
    reason: str
    fund_units: list[dict] = field(default_factory=list)
    q3: dict = field(default_factory=dict)
    sfu_shapes: dict[str, dict] = field(default_factory=dict)
    kernels: dict[str, dict] = field(default_factory=dict)
    thm17: dict[str, dict] = field(default_factory=dict)
    kuroda: dict = field(default_factory=dict)
    order2: dict = field(default_factory=dict)
    identities: list[dict] = field(default_factory=list)
    checks: dict[str, str] = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)
    overall: str = "FAIL"
    timings: dict[str, float] | None = None
    schema: int = SCHEMA

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> PairReport:
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> PairReport:
        return cls.from_dict(json.loads(text))

    @property
    def passed(self) -> bool:
        return self.overall == "PASS"


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.spent: dict[str, float] = {}

    @contextmanager
    def __call__(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            if self.enabled:
                self.spent[name] = round(time.perf_counter() - t0, 4)


def _fund_summary(d: int) -> dict:
    e = fund_unit(d)
    return {"d": d, "x": e.x, "y": e.y, "denom": e.denom, "norm": e.norm}


def run_pair(
    p1: int,
    p2: int,
    checks: tuple[str, ...] | set[str] = CHECKS,
    prec: int = 256,
    timings: bool = False,
) -> PairReport:
    """Run the full pipeline on (p1, p2).

    Raises InvalidPair on bad input. An ineligible pair returns a report with
    overall "INELIGIBLE" and no theorem check run.
    """
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")
    elig = eligibility(p1, p2)
    rep = PairReport(
        pair=[p1, p2],
        symbols={"p1_p2": elig.sym_pp, "2_p1": elig.sym_2p1, "2_p2": elig.sym_2p2},
        eligible=elig.eligible,
        reason=elig.reason,
    )
    if not elig.eligible:
        rep.overall = "INELIGIBLE"
        rep.checks = {c: "skipped" for c in ("norm", *CHECKS)}
        return rep

    clock = _Clock(timings)
    F = Field(p1, p2)
    d = F.d
    with clock("pell"):
        rep.fund_units = [_fund_summary(n) for n in (2, p1, p2, 2 * p1, 2 * p2, p1 * p2, d)]
    rep.checks["norm"] = "pass" if rep.fund_units[-1]["norm"] == -1 else "fail"

    if "kernels" in checks:
        try:
            _kernels(F, rep, clock, prec)
        except ArithmeticError as exc:
            rep.errors.append(f"kernels: {type(exc).__name__}: {exc}")
            rep.checks["kernels"] = "fail"
    else:
        rep.checks["kernels"] = "disabled"

    if "order2" in checks:
        with clock("order2"):
            o2 = order_two_check(F)
        rep.order2 = {"nonprincipal_in_k": o2.nonprincipal, "h1h2_by_norm": o2.criterion_h1h2,
                      "passed": o2.passed}
        rep.checks["order2"] = "pass" if o2.passed else "fail"
    else:
        rep.checks["order2"] = "disabled"

    if "kuroda" in checks:
        with clock("kuroda"):
            kr = kuroda_check(p1, p2)
        rep.kuroda = dataclasses.asdict(kr)
        if not kr.applicable:
            rep.checks["kuroda"] = "skipped"
        else:
            rep.checks["kuroda"] = "pass" if kr.passed else "fail"
    else:
        rep.checks["kuroda"] = "disabled"

    if "identities" in checks:
        with clock("identities"):
            ids = verify_all(F)
        rep.identities = [dataclasses.asdict(r) for r in ids]
        rep.checks["identities"] = "pass" if all(r.ok for r in ids) else "fail"
    else:
        rep.checks["identities"] = "disabled"

    rep.overall = "PASS" if all(s != "fail" for s in rep.checks.values()) else "FAIL"
    if timings:
        rep.timings = clock.spent
    return rep


def _kernels(F: Field, rep: PairReport, clock: _Clock, prec: int) -> None:
    ok = True
    with clock("units"):
        sfus = {t: sfu_classify(F, t) for t in TOWERS}
        sfus["k*"] = genus_unit_subgroup(F, [sfus[t] for t in TOWERS])
        q3 = unit_index_K3(sfus["K3"])
    rep.q3 = dataclasses.asdict(q3)
    with clock("sfu_verify"):
        for t, s in sfus.items():
            entry = s.summary()
            if t in TOWERS:
                chk = verify_sfu(F, s, prec=prec)
                entry["verified"] = chk.ok
                entry["regulator"] = mpmath.nstr(mpmath.mpf(chk.regulator), 12) if chk.regulator else ""
                ok &= chk.ok
            rep.sfu_shapes[t] = entry
    predicted = predicted_kernels(F, q3)
    with clock("kernels"):
        for t in (*TOWERS, "k*"):
            ker, wit = computed_kernel(F, t, sfus[t])
            match = ker == predicted[t]
            ok &= match
            rep.kernels[t] = {
                "predicted": predicted[t].encode(),
                "computed": ker.encode(),
                "size": len(ker),
                "match": match,
                "witness_units": {b: w.unit_label for b, w in sorted(wit.items())},
            }
            if t in TOWERS:
                ni = norm_index(F, sfus[t])
                count = thm17_count(F, sfus[t])
                rep.thm17[t] = {"norm_index": ni, "count": count, "match": count == len(ker)}
                ok &= count == len(ker)
    rep.checks["kernels"] = "pass" if ok else "fail"


# rendering

def csv_row(rep: PairReport) -> dict[str, object]:
    ker = rep.kernels
    th = rep.thm17
    return {
        "p1": rep.pair[0],
        "p2": rep.pair[1],
        "eligible": int(rep.eligible),
        "sym_pp": rep.symbols["p1_p2"],
        "sym_2p1": rep.symbols["2_p1"],
        "sym_2p2": rep.symbols["2_p2"],
        "norm_eps_d": rep.fund_units[-1]["norm"] if rep.fund_units else "",
        "q3": rep.q3.get("q", ""),
        "ker_K1": ker.get("K1", {}).get("computed", ""),
        "ker_K2": ker.get("K2", {}).get("computed", ""),
        "ker_K3": ker.get("K3", {}).get("computed", ""),
        "ker_genus": ker.get("k*", {}).get("computed", ""),
        "thm17_K1": th.get("K1", {}).get("count", ""),
        "thm17_K2": th.get("K2", {}).get("count", ""),
        "thm17_K3": th.get("K3", {}).get("count", ""),
        "kuroda_v2": rep.kuroda.get("v2_sum", "") if rep.kuroda.get("applicable") else "",
        "overall": rep.overall,
    }


def render_csv(reports: list[PairReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(csv_row(r))
    return buf.getvalue()


def _text(rep: PairReport) -> str:
    p1, p2 = rep.pair
    s = rep.symbols
    out = [
        f"pair (p1, p2) = ({p1}, {p2})   d = {2 * p1 * p2}",
        f"symbols (p1/p2)={s['p1_p2']:+d} (2/p1)={s['2_p1']:+d} (2/p2)={s['2_p2']:+d}: "
        f"{'eligible' if rep.eligible else 'ineligible'} ({rep.reason})",
    ]
    if rep.fund_units:
        out.append("fundamental units:")
        for u in rep.fund_units:
            frac = f"({u['x']} + {u['y']}*sqrt{u['d']})/{u['denom']}" if u["denom"] != 1 \
                else f"{u['x']} + {u['y']}*sqrt{u['d']}"
            out.append(f"  eps{u['d']} = {frac}   norm {u['norm']:+d}")
    if rep.q3:
        out.append(f"q(K3) = {rep.q3['q']}  [{rep.q3['method']}]")
    for t, e in rep.sfu_shapes.items():
        ver = "" if "verified" not in e else ("  verified" if e["verified"] else "  NOT VERIFIED")
        gens = ", ".join([e["torsion"], *e["generators"]])
        out.append(f"SFU {t:3s} {e['shape']:16s} <{gens}>{ver}")
    for t, k in rep.kernels.items():
        th = rep.thm17.get(t)
        extra = f"  |ker| {k['size']} vs 2[E_k:N] {th['count']}" if th else ""
        flag = "ok" if k["match"] and (th is None or th["match"]) else "MISMATCH"
        out.append(f"ker j_{t:3s} computed {k['computed']:12s} predicted {k['predicted']:12s}{extra}  {flag}")
    if rep.kuroda:
        kr = rep.kuroda
        if kr["applicable"]:
            out.append(f"kuroda h(d)={kr['h_real']} h(-d)={kr['h_imag']} v2 sum={kr['v2_sum']}")
        else:
            out.append(f"kuroda {kr['reason']}")
    if rep.order2:
        bad = [b for b, v in rep.order2["nonprincipal_in_k"].items() if not v]
        out.append("order2 all 7 classes non-principal in k" if not bad else f"order2 principal in k: {bad}")
    for r in rep.identities:
        out.append(f"identity {r['tag']:10s} {r['status']:7s} {r['detail']}")
    for e in rep.errors:
        out.append(f"error: {e}")
    out.append("checks: " + ", ".join(f"{k}={v}" for k, v in rep.checks.items()))
    if rep.timings:
        out.append("timings: " + ", ".join(f"{k}={v:.3f}s" for k, v in rep.timings.items()))
    out.append(f"overall: {rep.overall}")
    return "\n".join(out) + "\n"


def render(rep: PairReport, fmt: str = "text") -> str:
    if fmt == "text":
        return _text(rep)
    if fmt == "json":
        return rep.to_json() + "\n"
    if fmt == "csv":
        return render_csv([rep])
    raise ValueError(f"unknown format {fmt!r}")
