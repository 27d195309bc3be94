"""Structured analysis reports.

A report is a plain ``dict`` with a fixed key order so that JSON output is
byte-stable.  Every entry under ``"verdicts"`` names the result it checks,
whether its hypotheses were met on this instance (``asserted``), and whether
the conclusion holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable

from .config import Configuration, format_rational, to_document
from .extension import (
    CorrectedClass,
    check_corrected_class,
    e_geom,
    is_rigid,
    propagation_closure,
    realization_commutes,
    realize,
)
from .incidence import (
    BlockPartition,
    IncidenceDatum,
    block_constant_space,
    geometric_space,
    image_equals_block_constant_criterion,
    incidence_blocks,
    is_block_adapted,
    is_geometrically_admissible,
)
from .lattice import (
    HypothesisFailed,
    block_separated_equality,
    check_orbit_blocks,
    comparison_theorem,
    verify_block_separated,
)
from .linalg import Subspace, contains, kernel, membership, rank

__all__ = ["Verdict", "analyze", "compare", "failures", "hypothesis_failures", "render_text"]


@dataclass(frozen=True)
class Verdict:
    name: str
    statement: str
    asserted: bool
    holds: bool
    detail: str = ""

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "statement": self.statement,
            "asserted": self.asserted,
            "holds": self.holds,
        }
        if self.detail:
            out["detail"] = self.detail
        return out


def _basis(s: Subspace) -> list[list[int | str]]:
    return [[format_rational(x) for x in v] for v in s.basis]


def _blocks(p: BlockPartition, labels: Iterable[str]) -> list[list[str]]:
    labels = list(labels)
    return [[labels[k] for k in block] for block in p.blocks]


def _class_checks(prefix: str, c: CorrectedClass, d: IncidenceDatum, admissible: bool, adapted: bool) -> tuple[dict, list[Verdict]]:
    rep = check_corrected_class(c, d)
    refined = rep.incidence_blocks.refines(rep.propagation_blocks)
    section = {
        "components": [format_rational(x) for x in c.components],
        "propagation_blocks": _blocks(rep.propagation_blocks, d.node_labels),
        "propagation_ok": rep.propagation_ok,
        "incidence_ok": rep.incidence_ok,
        "in_e_geom": rep.in_e_geom,
        "warnings": list(rep.warnings),
    }
    verdicts = [
        Verdict(
            f"{prefix}propagation",
            "on admissible cycles the class is constant along each cycle's nodes",
            admissible,
            rep.propagation_ok,
            f"propagation_ok={str(rep.propagation_ok).lower()}",
        ),
        Verdict(
            f"{prefix}incidence-compatibility",
            "for admissible data whose incidence blocks lie inside propagation blocks, the class is incidence-compatible",
            admissible and refined,
            rep.incidence_ok,
            f"incidence_ok={str(rep.incidence_ok).lower()}",
        ),
        Verdict(
            f"{prefix}realized-subspace-membership",
            "for admissible block-adapted data the class lies in the realized extension subspace",
            admissible and adapted,
            rep.in_e_geom,
            f"in_e_geom={str(rep.in_e_geom).lower()}",
        ),
        Verdict(
            f"{prefix}compatibility-iff-membership",
            "for block-adapted data, incidence-compatible iff in the realized extension subspace",
            adapted,
            rep.incidence_ok == rep.in_e_geom,
        ),
    ]
    return section, verdicts


def analyze(cfg: Configuration) -> dict[str, Any]:
    d = cfg.datum()
    r = d.r
    blocks = incidence_blocks(d)
    v_geom = geometric_space(d)
    block_const = block_constant_space(blocks)
    e = e_geom(d)
    adm = is_geometrically_admissible(d)
    adapted = is_block_adapted(d)
    rk = rank(d.matrix)
    warnings = list(adm.warnings)
    if not adapted:
        warnings.append("datum is not block-adapted: the realized subspace is smaller than the block-constant subspace")

    verdicts = [
        Verdict(
            "realized-dimension",
            "dim of the realized extension subspace equals the incidence rank and is at most the cycle count",
            True,
            e.dim == rk == v_geom.dim and e.dim <= d.n_cycles,
        ),
        Verdict(
            "rank-nullity",
            "cycles = dim ker + dim V_geom, and nodes = dim V_geom + dim V_rel",
            True,
            d.n_cycles == kernel(d.matrix.transpose()).dim + v_geom.dim and r == v_geom.dim + (r - rk),
        ),
        Verdict(
            "block-constant-containment",
            "the geometric coefficient space consists of block-constant vectors",
            True,
            contains(block_const, v_geom),
        ),
        Verdict(
            "independent-columns-criterion",
            "independent distinct incidence columns imply block-adaptedness",
            image_equals_block_constant_criterion(d),
            adapted,
        ),
    ]

    report: dict[str, Any] = {
        "command": "analyze",
        "input": to_document(cfg),
        "blocks": _blocks(blocks, d.node_labels),
        "dims": {"node": r, "geom": v_geom.dim, "e_geom": e.dim, "rel": r - v_geom.dim},
        "flags": {"block_adapted": adapted, "admissible": adm.admissible, "rigid": is_rigid(d)},
        "admissibility": {
            "per_cycle": dict(zip(d.cycle_labels, adm.per_cycle)),
            "reasons": list(adm.reasons),
        },
        "subspaces": {
            "geometric_space": _basis(v_geom),
            "block_constant_space": _basis(block_const),
            "realized_extension_space": _basis(e),
            "propagation_blocks": _blocks(propagation_closure(d), d.node_labels),
        },
    }

    perverse = cfg.perverse_class()
    if perverse is not None:
        section, vs = _class_checks("", perverse, d, adm.admissible, adapted)
        report["corrected_class"] = section
        verdicts += vs
        warnings += section["warnings"]

    mhm = cfg.mhm_corrected_class()
    if mhm is not None:
        section, vs = _class_checks("mhm-", mhm, d, adm.admissible, adapted)
        rat = cfg.realization()
        if rat is not None:
            realized = realize(mhm, rat)
            in_mhm = section["in_e_geom"]
            in_target = membership(realized.components, e_geom(d, rat.target))
            section["realized"] = [format_rational(x) for x in realized.components]
            section["realized_in_e_geom"] = in_target
            vs.append(
                Verdict(
                    "realization-commutes",
                    "realization composed with the MHM incidence map equals the perverse incidence map",
                    True,
                    realization_commutes(d, rat),
                )
            )
            vs.append(
                Verdict(
                    "realization-preserves-subspace",
                    "realizing a class of the MHM realized subspace lands in the perverse realized subspace",
                    in_mhm,
                    in_target,
                )
            )
        report["mhm_class"] = section
        verdicts += vs
    elif cfg.realization() is not None:
        rat = cfg.realization()
        verdicts.append(
            Verdict(
                "realization-commutes",
                "realization composed with the MHM incidence map equals the perverse incidence map",
                True,
                realization_commutes(d, rat),
            )
        )

    report["verdicts"] = [v.as_dict() for v in verdicts]
    report["warnings"] = warnings
    return report


def compare(cfg: Configuration) -> dict[str, Any]:
    """Comparison report; raises MissingSides when side data is absent."""
    p = cfg.comparison_problem()
    d = p.datum
    cmp = comparison_theorem(p)
    sep = verify_block_separated(p)
    compatible = all(cmp.compatible.values())
    verdicts = [
        Verdict(
            "common-factorization",
            "if every side factors through q_geom, its kernel lies in all three relation lattices",
            compatible,
            contains(cmp.intersection, cmp.r_geom),
        ),
        Verdict(
            "comparison-identity",
            "for compatible minimal data, ker q_geom equals R_res ∩ R_sm ∩ R_ext",
            compatible and cmp.minimal,
            cmp.r_geom == cmp.intersection,
        ),
    ]
    report: dict[str, Any] = {
        "command": "compare",
        "input": to_document(cfg),
        "blocks": _blocks(incidence_blocks(d), d.node_labels),
        "complement": cmp.complement,
        "lattices": {
            "R_geom": _basis(cmp.r_geom),
            "R_res": _basis(cmp.r_res),
            "R_sm": _basis(cmp.r_sm),
            "R_ext": _basis(cmp.r_ext),
            "intersection": _basis(cmp.intersection),
        },
        "comparison": {
            "compatible": cmp.compatible,
            "minimal": cmp.minimal,
            "identity_holds": cmp.identity_holds,
            "failing": list(cmp.failing),
        },
        "block_separated": {
            "conditions": sep.conditions,
            "failed": list(sep.failed),
            "details": sep.details,
        },
    }
    hypotheses: list[dict[str, Any]] = []
    if sep.passed:
        try:
            eq = block_separated_equality(p)
        except HypothesisFailed as exc:  # pragma: no cover - sep.passed was checked
            hypotheses.append({"name": "block-separated", "holds": False, "detail": str(exc)})
        else:
            report["block_separated"]["equality"] = {
                "R_blk": _basis(eq.r_blk),
                "quotient_dims": eq.quotient_dims,
                "n_blocks": eq.n_blocks,
                "verdict": "R_res=R_sm=R_ext=R_blk" if eq.equal else "lattices differ",
            }
            verdicts.append(
                Verdict(
                    "block-separated-equality",
                    "in a block-separated family R_res = R_sm = R_ext = R_blk with quotient dim |B|",
                    True,
                    eq.equal,
                )
            )
    g = cfg.group()
    if g is not None:
        ok = check_orbit_blocks(g, incidence_blocks(d))
        hypotheses.append(
            {
                "name": "orbit-blocks",
                "statement": "the symmetry group acts on each relation block transitively and preserves it",
                "holds": ok,
                "orbits": _blocks(g.orbits(), d.node_labels),
            }
        )
    report["hypotheses"] = hypotheses
    report["verdicts"] = [v.as_dict() for v in verdicts]
    return report


def failures(report: dict[str, Any]) -> list[dict[str, Any]]:
    """Verdicts whose hypotheses were met but whose conclusion failed."""
    return [v for v in report.get("verdicts", []) if v["asserted"] and not v["holds"]]


def hypothesis_failures(report: dict[str, Any]) -> list[dict[str, Any]]:
    return [h for h in report.get("hypotheses", []) if not h["holds"]]


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list) and value and all(isinstance(v, list) for v in value):
        return "; ".join("(" + ", ".join(str(x) for x in v) + ")" for v in value) or "0"
    if isinstance(value, list):
        return "[" + ", ".join(str(x) for x in value) + "]" if value else "-"
    return str(value)


def render_text(report: dict[str, Any]) -> str:
    lines = [f"== {report['command']} =="]
    for key, value in report.items():
        if key in ("command", "input", "verdicts", "hypotheses", "warnings"):
            continue
        if isinstance(value, dict):
            lines.append(f"{key}:")
            for sub, item in value.items():
                if isinstance(item, dict):
                    lines.append(f"  {sub}: " + ", ".join(f"{k}={_fmt(v)}" for k, v in item.items()))
                else:
                    lines.append(f"  {sub}: {_fmt(item)}")
        else:
            lines.append(f"{key}: {_fmt(value)}")
    for h in report.get("hypotheses", []):
        lines.append(f"hypothesis {h['name']}: {'holds' if h['holds'] else 'FAILS'}")
    for v in report.get("verdicts", []):
        if not v["asserted"]:
            status = "n/a "
        else:
            status = "PASS" if v["holds"] else "FAIL"
        lines.append(f"[{status}] {v['name']}: {v['statement']}")
    for w in report.get("warnings", []):
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"

