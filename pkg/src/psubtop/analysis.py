"""Per-group homotopy reports, the sufficient-condition filters, and the
batch CSV pipeline."""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import finposet
from .errors import PsubtopError, RowTimeout
from .groups import (
    DEFAULT_MAX_ORDER,
    Group,
    is_prime,
    o_p,
    omega1,
    p_part,
    prime_divisors,
    require_prime_divisor,
    sylow_subgroups,
)
from .groupfile import load_group_file
from .homol import HomologySummary, reduced_homology
from .perms import cycle_text
from .plattice import (
    ap_poset,
    enumerate_p_subgroups,
    enumerate_p_tori,
    sp_poset,
    step_predicate,
    tori_all_conjugate,
)

CSV_VERSION = "psubtop-report v1"
CSV_FIELDS = [
    "name",
    "order",
    "p",
    "p_part",
    "sp_size",
    "ap_size",
    "sp_core",
    "ap_core",
    "same_homotopy_type",
    "op_order",
    "sp_contractible",
    "ap_contractible",
    "steps",
    "sp_height",
    "ap_height",
    "pred0",
    "pred1",
    "pred2",
    "pred3",
    "propA_case",
    "propA_retract",
    "propB_case",
    "sp_euler",
    "ap_euler",
    "sp_homology",
    "ap_homology",
    "candidate",
    "error",
]


@dataclass
class HomotopyReport:
    name: str
    order: int
    p: int
    p_order: int
    sp_size: int
    ap_size: int
    sp_core_size: int
    ap_core_size: int
    same_homotopy_type: bool
    op_order: int
    sp_contractible: bool
    ap_contractible: bool
    steps: int | None
    sp_height: int
    ap_height: int
    step_preds: tuple
    propA_case: int | None
    propA_retract: bool
    propB_case: int | None
    sp_euler: int
    ap_euler: int
    sp_homology: HomologySummary | None
    ap_homology: HomologySummary | None

    def counterexample_candidate(self) -> bool:
        """Rows the filters cannot explain: either the two spaces differ with
        no sufficient condition firing, or contractibility fails to transfer."""
        stong_gap = (
            self.propB_case is None
            and self.sp_contractible
            and not self.ap_contractible
        )
        type_gap = self.propA_case is None and not self.same_homotopy_type
        return stong_gap or type_gap


def _check_deadline(deadline):
    if deadline is not None and time.monotonic() > deadline:
        raise RowTimeout("analysis exceeded its wall-clock budget")


def is_dihedral(group: Group) -> bool:
    """Order 2m with a cyclic subgroup of order m inverted by an involution."""
    if group.order % 2:
        return False
    m = group.order // 2
    orders = group.element_orders()
    invs = np.nonzero(orders == 2)[0]
    for x in np.nonzero(orders == m)[0]:
        cyc = group.generated_subgroup([int(x)])
        xinv = int(group.inverses[x])
        for t in invs:
            if cyc.contains(int(t)):
                continue
            if group.conjugate_many(int(t), np.asarray([int(x)]))[0] == xinv:
                return True
    if m == 1 and invs.size:  # order 2
        return True
    return False


def filter_propA(group: Group, p: int) -> tuple[int | None, bool]:
    """First sufficient condition for the two posets to share a homotopy type.

    Returns (case, retract) where case is 1..4 or None and retract records
    whether the torus poset is a strong deformation retract of the subgroup
    poset (exactly the case-1 condition).
    """
    require_prime_divisor(group, p)
    cond1 = all(
        omega1(group, p, within=syl).is_abelian() for syl in sylow_subgroups(group, p)
    )
    if cond1:
        return 1, True
    if finposet.height(ap_poset(group, p)) == 0:
        return 2, False
    if is_dihedral(group):
        return 3, False
    non_p = group.order // p_part(group.order, p)
    if non_p == 1 or is_prime(non_p):
        return 4, False
    return None, False


def filter_propB(group: Group, p: int) -> int | None:
    """First sufficient condition for contractibility to transfer from the
    subgroup poset to the torus poset: 1..3 or None."""
    require_prime_divisor(group, p)
    if tori_all_conjugate(group, p):
        return 1
    if finposet.height(ap_poset(group, p)) <= 1:
        return 2
    if p_part(group.order, p) <= p**3:
        return 3
    return None


def analyze_group(
    group: Group,
    p: int,
    *,
    skip_homology: bool = False,
    skip_steps: bool = False,
    deadline: float | None = None,
) -> HomotopyReport:
    """Full homotopy report for one (group, prime) pair."""
    require_prime_divisor(group, p)
    name = group.name or f"group{group.order}"

    sp_family = enumerate_p_subgroups(group, p)
    ap_family = enumerate_p_tori(group, p)
    _check_deadline(deadline)
    sp = sp_poset(group, p)
    ap = ap_poset(group, p)
    _check_deadline(deadline)

    sp_core, _ = finposet.core(sp)
    _check_deadline(deadline)
    ap_core, _ = finposet.core(ap)
    _check_deadline(deadline)

    same = finposet.poset_iso(sp_core, ap_core) is not None
    op_sub = o_p(group, p)
    steps = None
    if not skip_steps:
        steps = finposet.steps_to_contract(ap)
    _check_deadline(deadline)
    preds = tuple(step_predicate(group, p, n) for n in range(4))
    _check_deadline(deadline)
    case_a, retract = filter_propA(group, p)
    case_b = filter_propB(group, p)
    _check_deadline(deadline)

    sp_homology = ap_homology = None
    if not skip_homology:
        sp_homology = reduced_homology(finposet.order_complex(sp_core))
        _check_deadline(deadline)
        ap_homology = reduced_homology(finposet.order_complex(ap_core))
        _check_deadline(deadline)

    return HomotopyReport(
        name=name,
        order=group.order,
        p=p,
        p_order=p_part(group.order, p),
        sp_size=len(sp_family.members),
        ap_size=len(ap_family.members),
        sp_core_size=sp_core.n,
        ap_core_size=ap_core.n,
        same_homotopy_type=same,
        op_order=op_sub.order,
        sp_contractible=sp_core.n == 1,
        ap_contractible=ap_core.n == 1,
        steps=steps,
        sp_height=finposet.height(sp),
        ap_height=finposet.height(ap),
        step_preds=preds,
        propA_case=case_a,
        propA_retract=retract,
        propB_case=case_b,
        sp_euler=finposet.euler_char(sp),
        ap_euler=finposet.euler_char(ap),
        sp_homology=sp_homology,
        ap_homology=ap_homology,
    )


def analyze_file(
    path,
    p: int,
    *,
    skip_homology: bool = False,
    skip_steps: bool = False,
    max_order: int = DEFAULT_MAX_ORDER,
    deadline: float | None = None,
) -> HomotopyReport:
    group = load_group_file(path, max_order=max_order)
    return analyze_group(
        group, p, skip_homology=skip_homology, skip_steps=skip_steps, deadline=deadline
    )


# -- CSV report -------------------------------------------------------------


def _bool(value: bool) -> str:
    return "true" if value else "false"


def report_row(report: HomotopyReport) -> dict:
    return {
        "name": report.name,
        "order": report.order,
        "p": report.p,
        "p_part": report.p_order,
        "sp_size": report.sp_size,
        "ap_size": report.ap_size,
        "sp_core": report.sp_core_size,
        "ap_core": report.ap_core_size,
        "same_homotopy_type": _bool(report.same_homotopy_type),
        "op_order": report.op_order,
        "sp_contractible": _bool(report.sp_contractible),
        "ap_contractible": _bool(report.ap_contractible),
        "steps": "" if report.steps is None else report.steps,
        "sp_height": report.sp_height,
        "ap_height": report.ap_height,
        "pred0": _bool(report.step_preds[0]),
        "pred1": _bool(report.step_preds[1]),
        "pred2": _bool(report.step_preds[2]),
        "pred3": _bool(report.step_preds[3]),
        "propA_case": "none" if report.propA_case is None else report.propA_case,
        "propA_retract": _bool(report.propA_retract),
        "propB_case": "none" if report.propB_case is None else report.propB_case,
        "sp_euler": report.sp_euler,
        "ap_euler": report.ap_euler,
        "sp_homology": "" if report.sp_homology is None else report.sp_homology.serialize(),
        "ap_homology": "" if report.ap_homology is None else report.ap_homology.serialize(),
        "candidate": _bool(report.counterexample_candidate()),
        "error": "",
    }


def _error_row(name: str, p, message: str) -> dict:
    row = {field: "" for field in CSV_FIELDS}
    row["name"] = name
    row["p"] = p
    row["error"] = message
    return row


def _batch_file_worker(args) -> list[dict]:
    (path_str, primes, timeout, skip_homology, skip_steps, max_order) = args
    path = Path(path_str)
    rows: list[dict] = []
    try:
        group = load_group_file(path, max_order=max_order)
    except PsubtopError as exc:
        return [_error_row(path.stem, "", str(exc))]
    divisors = prime_divisors(group.order)
    wanted = divisors if primes == "all" else [p for p in primes if p in divisors]
    for p in wanted:
        deadline = None if timeout is None else time.monotonic() + timeout
        try:
            report = analyze_group(
                group,
                p,
                skip_homology=skip_homology,
                skip_steps=skip_steps,
                deadline=deadline,
            )
            rows.append(report_row(report))
        except RowTimeout:
            rows.append(_error_row(group.name or path.stem, p, "timeout"))
        except PsubtopError as exc:
            rows.append(_error_row(group.name or path.stem, p, str(exc)))
    return rows


def batch(
    directory,
    primes="all",
    *,
    jobs: int = 1,
    timeout: float | None = 120.0,
    skip_homology: bool = False,
    skip_steps: bool = False,
    max_order: int = DEFAULT_MAX_ORDER,
) -> tuple[str, dict]:
    """Analyze every .grp file in a directory.

    Returns (csv_text, summary).  Rows are sorted by (name, p) so output is
    identical across runs and worker counts; per-row failures land in the
    ``error`` column and do not stop the batch.
    """
    directory = Path(directory)
    files = sorted(directory.glob("*.grp"))
    args = [
        (str(path), primes, timeout, skip_homology, skip_steps, max_order)
        for path in files
    ]
    if jobs <= 1:
        results = [_batch_file_worker(a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_batch_file_worker, args))
    rows = [row for chunk in results for row in chunk]
    rows.sort(key=lambda r: (str(r["name"]), str(r["p"])))

    buffer = io.StringIO()
    buffer.write(f"# {CSV_VERSION}\n")
    writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    summary = {
        "files": len(files),
        "rows": len(rows),
        "errors": sum(1 for r in rows if r["error"]),
        "candidates": sum(1 for r in rows if r.get("candidate") == "true"),
    }
    return buffer.getvalue(), summary


# -- DOT export -------------------------------------------------------------

DOT_CHOICES = ("Sp", "Ap", "core_Sp", "core_Ap", "i_Ap")


def export_dot(group: Group, p: int, which: str) -> str:
    """Hasse diagram of the requested poset, nodes labeled by subgroup order
    and a short generator list."""
    if which not in DOT_CHOICES:
        raise ValueError(f"which must be one of {DOT_CHOICES}")
    if which == "Sp":
        poset = sp_poset(group, p)
    elif which == "Ap":
        poset = ap_poset(group, p)
    elif which == "core_Sp":
        poset, _ = finposet.core(sp_poset(group, p))
    elif which == "core_Ap":
        poset, _ = finposet.core(ap_poset(group, p))
    else:
        poset = finposet.i_op(ap_poset(group, p))
    labels = []
    for sub in poset.labels:
        gens = ",".join(cycle_text(g) for g in sub.small_generators())
        labels.append(f"order={sub.order}, gens={gens}")
    return finposet.hasse_dot(poset, labels)
