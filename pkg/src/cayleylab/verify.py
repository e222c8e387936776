"""Battery-wide verification sweeps.

Runs every structural checker over a fixed battery of groups (and random
Latin squares), collecting machine-readable findings.  A finding carries the
group, the element x, the check name, and a replayable counterexample; an
empty findings list is the pass condition.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import structures
from .graphs import LatinSquare, latin_from_group, random_latin_square, stream
from .groups import (GroupTable, build_group, centralizer_count,
                     inverting_count, involution_series)

LATIN_BATTERY_SEED = 90210
PAIR_SAMPLE_SEED = 4242
MEMBERSHIP_EXHAUSTIVE_LIMIT = 64
INTERSECTION_RULE_LIMIT = 128


def battery_specs(profile: str = "default") -> list[str]:
    """The group battery: abelian/nonabelian, even/odd order, exponent-2 and
    involution-rich families."""
    if profile == "small":
        return (["cyclic:5", "cyclic:8", "cyclic:12", "cyclic:15", "z2^:3",
                 "dihedral:4", "dihedral:5", "sym:3", "sym:4",
                 "prod:cyclic:2,cyclic:4"])
    if profile != "default":
        raise ValueError(f"unknown battery profile: {profile!r}")
    specs = [f"cyclic:{n}" for n in range(5, 65)]
    specs += [f"z2^:{k}" for k in range(2, 7)]
    specs += [f"dihedral:{m}" for m in range(3, 17)]
    specs += [f"sym:{m}" for m in (3, 4, 5)]
    specs += ["prod:cyclic:3,sym:3", "prod:cyclic:2,cyclic:4"]
    return specs


def battery_groups(profile: str = "default") -> list[GroupTable]:
    return [build_group(s) for s in battery_specs(profile)]


def battery_latin_squares(profile: str = "default") -> list[tuple[str, LatinSquare]]:
    """Five seeded random squares of orders 8/10/12 plus the cyclic square of
    order 6."""
    orders = (8, 10, 12) if profile == "default" else (5, 6)
    count = 5 if profile == "default" else 2
    out = []
    for i in range(count):
        n = orders[i % len(orders)]
        out.append((f"latin-random:{n}#{i}", random_latin_square(n, stream(LATIN_BATTERY_SEED, i))))
    out.append(("latin-cyclic:6", latin_from_group(build_group("cyclic:6"))))
    return out


@dataclass
class Finding:
    group: str
    check: str
    x: int | None = None
    status: str = "violation"
    counterexample: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"group": self.group, "x": self.x, "check": self.check,
               "status": self.status}
        if self.counterexample:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class VerificationReport:
    checks: list[str]
    groups: list[str]
    findings: list[Finding]
    elapsed_s: float

    @property
    def ok(self) -> bool:
        return not self.findings

    def as_dict(self) -> dict:
        return {
            "checks": self.checks,
            "groups": self.groups,
            "violations": [f.as_dict() for f in self.findings],
            "ok": self.ok,
            "elapsed_s": round(self.elapsed_s, 3),
        }


GROUP_X_CHECKS = ("partition", "h-structure", "claim1", "claim2", "claim3",
                  "gamma", "s-set", "i-set", "union3", "witness-identities")
GROUP_CHECKS = ("gamma-membership", "sqrt-bound", "orbit-stabilizer")
GLOBAL_CHECKS = ("involution-series",)
LATIN_CHECKS = ("latin-gamma", "latin-dependency")
ALL_CHECKS = GROUP_X_CHECKS + GROUP_CHECKS + GLOBAL_CHECKS + LATIN_CHECKS


def _check_group_x(g: GroupTable, x: int, checks: set[str], findings: list[Finding]) -> None:
    name = g.spec
    partition = structures.classify_types(g, x)
    try:
        h = structures.build_H(g, x)
    except AssertionError as exc:
        findings.append(Finding(name, "h-structure", x, counterexample={"error": str(exc)}))
        return

    if "partition" in checks:
        if len(partition.label) != g.order - 2:
            findings.append(Finding(name, "partition", x,
                                    counterexample={"labelled": len(partition.label)}))
        if partition.overlap_findings:
            findings.append(Finding(name, "partition", x,
                                    counterexample={"type3_overlap": list(partition.overlap_findings)}))
    if "h-structure" in checks:
        bad = structures.check_H_type_neighbors(g, x, partition, h)
        if bad:
            findings.append(Finding(name, "h-structure", x,
                                    counterexample={"type_neighbor_mismatch": bad[:5]}))
        if g.order <= INTERSECTION_RULE_LIMIT:
            bad = structures.check_H_intersection_rule(g, x, h)
            if bad:
                findings.append(Finding(name, "h-structure", x,
                                        counterexample={"intersection_rule_mismatch": bad[:5]}))
    if "claim1" in checks and not structures.verify_claim_type1_closed(g, x, partition, h):
        findings.append(Finding(name, "claim1", x))
    if "claim2" in checks:
        rep = structures.verify_claim_type2_colorable(g, x, partition, h)
        if not rep.four_colorable or rep.has_five_clique:
            findings.append(Finding(name, "claim2", x, counterexample={
                "four_colorable": rep.four_colorable, "has_five_clique": rep.has_five_clique}))
    if "claim3" in checks:
        try:
            structures.build_B_partition(g, x, partition, h)
        except AssertionError as exc:
            findings.append(Finding(name, "claim3", x, counterexample={"error": str(exc)}))
    if "gamma" in checks:
        try:
            gx = structures.build_gamma_x(g, x)
        except AssertionError as exc:
            findings.append(Finding(name, "gamma", x, counterexample={"error": str(exc)}))
            gx = None
        if gx is not None and g.is_abelian and max(gx.degrees()) > 4:
            findings.append(Finding(name, "gamma", x,
                                    counterexample={"abelian_degree": max(gx.degrees())}))
    if "s-set" in checks:
        try:
            structures.build_S_set(g, x)
        except AssertionError as exc:
            findings.append(Finding(name, "s-set", x, counterexample={"error": str(exc)}))
    if "i-set" in checks or "union3" in checks:
        iset = structures.build_I_set(g, x)
        if "i-set" in checks:
            if not iset.bounds_ok():
                findings.append(Finding(name, "i-set", x, counterexample={
                    "size": iset.size, "bounds": iset.lower_bounds()}))
            bad = structures.check_I_conditions(g, x, iset)
            if bad:
                findings.append(Finding(name, "i-set", x,
                                        counterexample={"condition_violations": bad[:5]}))
        if "union3" in checks:
            rep = structures.verify_union_size_3(g, x, iset)
            if not rep.ok:
                findings.append(Finding(name, "union3", x,
                                        counterexample={"violations": list(rep.violations[:5])}))
    if "witness-identities" in checks:
        bad = structures.check_witness_identities(g, x)
        if bad:
            findings.append(Finding(name, "witness-identities", x,
                                    counterexample={"violations": bad[:5]}))


def _check_group(g: GroupTable, checks: set[str], findings: list[Finding]) -> None:
    name = g.spec
    n = g.order
    if "gamma-membership" in checks:
        if n <= MEMBERSHIP_EXHAUSTIVE_LIMIT:
            pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        else:
            rng = stream(PAIR_SAMPLE_SEED, n)
            pairs = []
            while len(pairs) < 100:
                a, b = (int(v) for v in rng.integers(0, n, size=2))
                if a != b:
                    pairs.append((a, b))
        for pair in pairs:
            try:
                structures.gamma_membership_count(g, pair)
            except AssertionError:
                findings.append(Finding(name, "gamma-membership",
                                        counterexample={"pair": list(pair)}))
    if "sqrt-bound" in checks:
        cl_g = g.conjugacy().num_classes
        counts = np.bincount(g.squares(), minlength=n)
        worst = int(counts.max())
        if worst > math.sqrt(n * cl_g):
            findings.append(Finding(name, "sqrt-bound", counterexample={
                "max_square_roots": worst, "bound": math.sqrt(n * cl_g)}))
    if "orbit-stabilizer" in checks:
        conj = g.conjugacy()
        for x in range(n):
            cl_x = conj.cl(x)
            cc = centralizer_count(g, x)
            ic = inverting_count(g, x)
            if cc * cl_x != n:
                findings.append(Finding(name, "orbit-stabilizer", x, counterexample={
                    "centralizer": cc, "cl": cl_x}))
            if ic not in (0, n // cl_x):
                findings.append(Finding(name, "orbit-stabilizer", x, counterexample={
                    "inverting": ic, "expected": [0, n // cl_x]}))


def _check_involution_series(findings: list[Finding]) -> None:
    """The recurrence matches brute-force counting on S_m for m <= 8."""
    import itertools as it

    series = involution_series(8)
    if not series.bound_holds:
        findings.append(Finding("series", "involution-series",
                                counterexample={"bound": "2^m sqrt(m!)"}))
    for m in range(1, 9):
        brute = sum(1 for p in it.permutations(range(m))
                    if all(p[p[i]] == i for i in range(m)))
        if series.values[m - 1] != brute:
            findings.append(Finding("series", "involution-series", m,
                                    counterexample={"recurrence": series.values[m - 1],
                                                    "brute_force": brute}))


def _check_latin(name: str, square: LatinSquare, checks: set[str],
                 findings: list[Finding]) -> None:
    n = square.order
    if "latin-gamma" in checks:
        gammas = {}
        for x in range(1, n):
            try:
                gammas[x] = structures.build_latin_gamma_x(square, x)
            except AssertionError as exc:
                findings.append(Finding(name, "latin-gamma", x,
                                        counterexample={"error": str(exc)}))
        # pair membership over all x is at most 8
        counts = np.zeros((n, n), dtype=np.int64)
        for gx in gammas.values():
            for a, nbs in enumerate(gx.neighbors):
                for b in nbs:
                    counts[a, b] += 1
        worst = int(counts.max())
        if worst > 8:
            a, b = (int(v[0]) for v in np.nonzero(counts == worst))
            findings.append(Finding(name, "latin-gamma",
                                    counterexample={"pair": [a, b], "memberships": worst}))
    if "latin-dependency" in checks:
        for x in range(n):
            for y in range(x + 1, n):
                try:
                    structures.latin_dependency_degree(square, (x, y))
                except AssertionError:
                    findings.append(Finding(name, "latin-dependency",
                                            counterexample={"pair": [x, y]}))


def run_verification(checks: list[str] | None = None,
                     battery: str = "default") -> VerificationReport:
    """Run the selected checks over the battery; all checks by default."""
    selected = set(ALL_CHECKS if not checks else checks)
    unknown = selected - set(ALL_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    start = time.monotonic()
    findings: list[Finding] = []
    group_names: list[str] = []

    if selected & set(GROUP_X_CHECKS + GROUP_CHECKS):
        for g in battery_groups(battery):
            group_names.append(g.spec)
            if selected & set(GROUP_X_CHECKS):
                for x in range(1, g.order):
                    _check_group_x(g, x, selected, findings)
            if selected & set(GROUP_CHECKS):
                _check_group(g, selected, findings)
    if "involution-series" in selected:
        _check_involution_series(findings)
    if selected & set(LATIN_CHECKS):
        for name, square in battery_latin_squares(battery):
            group_names.append(name)
            _check_latin(name, square, selected, findings)

    return VerificationReport(checks=sorted(selected), groups=group_names,
                              findings=findings, elapsed_s=time.monotonic() - start)
