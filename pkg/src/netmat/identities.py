"""Machine-readable catalogue of matrix identities with evaluation and audit.

Identity statements are data, not code: each side of a relation is an
expression tree over the matrix symbols of a structure bundle and a
utilization bundle, so the catalogue serializes to JSON and external users
can evaluate relations of their own without touching this module.

An expression is either a symbol name or an (op, lhs, rhs) triple with op
one of "had" (Hadamard product), "add", "sub".  Relations are "eq" (exact
cell equality) or "leq" (elementwise order).

Catalogue classes:

    UNIVERSAL             holds on every dataset; an audit failure means a bug
    MUTUAL_EXCLUSIVITY    zero-product relations; also universal
    FULLY_UTILIZED_ONLY   holds when every edge carries at least one trajectory
    CLAIMED_AUDIT         count-level claims that fail under multiplicity >= 2;
                          reported as machine verdicts, never asserted
    NEGATIVE              known-false forms kept for counterexample demos
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from enum import Enum

from .errors import UndefinedProduct, UnknownIdentity
from .generators import GenConfig, gen_dataset
from .matrices import INF, CountMatrix, ew_add, ew_sub, hadamard
from .structure import Graph, StructureBundle, build_structure
from .utilization import Dataset, UtilizationBundle, build_utilization, is_fully_utilized

__all__ = [
    "IdentityClass",
    "IdentitySpec",
    "Witness",
    "IdentityVerdict",
    "AuditReport",
    "CATALOGUE",
    "list_identities",
    "get_identity",
    "evaluate_identity",
    "audit_dataset",
    "search_counterexample",
    "catalogue_to_json",
    "specs_from_json",
    "report_to_json_obj",
    "render_table",
]


class IdentityClass(str, Enum):
    UNIVERSAL = "UNIVERSAL"
    FULLY_UTILIZED_ONLY = "FULLY_UTILIZED_ONLY"
    MUTUAL_EXCLUSIVITY = "MUTUAL_EXCLUSIVITY"
    CLAIMED_AUDIT = "CLAIMED_AUDIT"
    NEGATIVE = "NEGATIVE"


SYMBOLS = (
    "A",
    "P",
    "Phat",
    "E",
    "Ehat",
    "F",
    "D",
    "L",
    "T",
    "Tc",
    "Fhat",
    "Dhat",
    "Lhat",
    "That",
    "Tchat",
    "0",
)

_OPS = ("had", "add", "sub")

_GLYPH = {
    "A": "A",
    "P": "P",
    "Phat": "P̂",
    "E": "E",
    "Ehat": "Ê",
    "F": "F",
    "D": "D",
    "L": "L",
    "T": "T",
    "Tc": "Tᶜ",
    "Fhat": "F̂",
    "Dhat": "D̂",
    "Lhat": "L̂",
    "That": "T̂",
    "Tchat": "T̂ᶜ",
    "0": "0",
}

_OP_GLYPH = {"had": "∘", "add": "+", "sub": "-"}
_REL_GLYPH = {"eq": "=", "leq": "≤"}


def render_expr(expr) -> str:
    """Human-readable form of an expression tree."""
    if isinstance(expr, str):
        return _GLYPH[expr]
    op, lhs, rhs = expr
    left = render_expr(lhs)
    right = render_expr(rhs)
    if not isinstance(lhs, str):
        left = f"({left})"
    if not isinstance(rhs, str):
        right = f"({right})"
    return f"{left} {_OP_GLYPH[op]} {right}"


@dataclass(frozen=True)
class IdentitySpec:
    """One catalogued relation between two matrix expressions."""

    id: str
    kind: IdentityClass
    relation: str
    lhs: object
    rhs: object
    group: str

    def statement(self) -> str:
        return f"{render_expr(self.lhs)} {_REL_GLYPH[self.relation]} {render_expr(self.rhs)}"


@dataclass(frozen=True)
class Witness:
    """First cell at which a relation fails, with both side values."""

    row: int
    col: int
    lhs: object
    rhs: object


@dataclass(frozen=True)
class IdentityVerdict:
    """Outcome of evaluating one catalogued relation on one dataset."""

    id: str
    holds: bool
    witness: Witness | None = None


@dataclass(frozen=True)
class AuditReport:
    """All catalogue verdicts for one dataset."""

    descriptor: dict
    verdicts: tuple[IdentityVerdict, ...]
    fully_utilized: bool

    @property
    def sound(self) -> bool:
        """True iff every UNIVERSAL and MUTUAL_EXCLUSIVITY relation holds."""
        gated = (IdentityClass.UNIVERSAL, IdentityClass.MUTUAL_EXCLUSIVITY)
        return all(
            v.holds for v in self.verdicts if get_identity(v.id).kind in gated
        )


def _had(a, b):
    return ("had", a, b)


def _add(a, b):
    return ("add", a, b)


def _sub(a, b):
    return ("sub", a, b)


_U = IdentityClass.UNIVERSAL
_ME = IdentityClass.MUTUAL_EXCLUSIVITY
_FU = IdentityClass.FULLY_UTILIZED_ONLY
_CL = IdentityClass.CLAIMED_AUDIT
_NEG = IdentityClass.NEGATIVE

CATALOGUE: tuple[IdentitySpec, ...] = tuple(
    IdentitySpec(ident, kind, rel, lhs, rhs, group)
    for ident, kind, rel, lhs, rhs, group in [
        # Structure and flow facts inherited from the base model.
        ("T1.EHAT_FIXED", _U, "eq", "Ehat", _had("Phat", "Ehat"), "base-model"),
        ("T1.A_FIXED", _U, "eq", "A", _had("Phat", "A"), "base-model"),
        ("T1.F_MASKED", _U, "eq", "F", _had("A", "F"), "base-model"),
        ("T1.D_MASKED", _U, "eq", "D", _had("Phat", "D"), "base-model"),
        ("T1.T_FROM_L", _U, "eq", "T", _had("A", "L"), "base-model"),
        ("T1.THAT_FROM_LHAT", _U, "eq", "That", _had("A", "Lhat"), "base-model"),
        ("T1.FT_SUM", _U, "eq", _add("F", "T"), _had("A", "D"), "base-model"),
        ("T1.AD_COMPLEMENT", _U, "eq", _had("A", "D"), _sub("D", "Tc"), "base-model"),
        ("T1.T_FROM_AD", _U, "eq", "T", _sub(_had("A", "D"), "F"), "base-model"),
        ("T1.TC_FROM_D", _U, "eq", "Tc", _had("Ehat", "D"), "base-model"),
        ("T1.L_SUM", _U, "eq", "L", _add("T", _had("Ehat", "D")), "base-model"),
        ("T1.FHAT_LEQ_A", _U, "leq", "Fhat", "A", "base-model"),
        ("T1.DHAT_LEQ_PHAT", _U, "leq", "Dhat", "Phat", "base-model"),
        ("T1.F_LEQ_D", _U, "leq", "F", "D", "base-model"),
        ("T1.FHAT_LEQ_DHAT", _U, "leq", "Fhat", "Dhat", "base-model"),
        # Zero products: structure vs structure.
        ("ME.A_EHAT", _ME, "eq", _had("A", "Ehat"), "0", "mutual-exclusivity"),
        # Zero products: structure vs usage.
        ("ME.A_TC", _ME, "eq", _had("A", "Tc"), "0", "mutual-exclusivity"),
        ("ME.A_TCHAT", _ME, "eq", _had("A", "Tchat"), "0", "mutual-exclusivity"),
        ("ME.F_EHAT", _ME, "eq", _had("F", "Ehat"), "0", "mutual-exclusivity"),
        ("ME.FHAT_EHAT", _ME, "eq", _had("Fhat", "Ehat"), "0", "mutual-exclusivity"),
        ("ME.T_EHAT", _ME, "eq", _had("T", "Ehat"), "0", "mutual-exclusivity"),
        ("ME.THAT_EHAT", _ME, "eq", _had("That", "Ehat"), "0", "mutual-exclusivity"),
        # Zero products: usage vs usage.
        ("ME.F_TC", _ME, "eq", _had("F", "Tc"), "0", "mutual-exclusivity"),
        ("ME.F_TCHAT", _ME, "eq", _had("F", "Tchat"), "0", "mutual-exclusivity"),
        ("ME.FHAT_TC", _ME, "eq", _had("Fhat", "Tc"), "0", "mutual-exclusivity"),
        ("ME.FHAT_TCHAT", _ME, "eq", _had("Fhat", "Tchat"), "0", "mutual-exclusivity"),
        ("ME.T_TC", _ME, "eq", _had("T", "Tc"), "0", "mutual-exclusivity"),
        ("ME.THAT_TCHAT", _ME, "eq", _had("That", "Tchat"), "0", "mutual-exclusivity"),
        ("ME.THAT_TC", _ME, "eq", _had("That", "Tc"), "0", "mutual-exclusivity"),
        ("ME.T_TCHAT", _ME, "eq", _had("T", "Tchat"), "0", "mutual-exclusivity"),
        # Absorptions around the substitute route matrix.
        ("B.DHAT_TC", _U, "eq", _had("Dhat", "Tc"), "Tc", "substitute-route"),
        ("B.LHAT_TC", _U, "eq", _had("Lhat", "Tc"), "Tc", "substitute-route"),
        ("B.EHAT_TC", _U, "eq", _had("Ehat", "Tc"), "Tc", "substitute-route"),
        ("B.TCHAT_TC", _U, "eq", _had("Tchat", "Tc"), "Tc", "substitute-route"),
        ("B.EHAT_L", _U, "eq", _had("Ehat", "L"), "Tc", "substitute-route"),
        ("B.EHAT_LHAT", _U, "eq", _had("Ehat", "Lhat"), "Tchat", "substitute-route"),
        ("B.EHAT_DHAT", _U, "eq", _had("Ehat", "Dhat"), "Tchat", "substitute-route"),
        ("B.L_DECOMP", _U, "eq", "L", _add("T", "Tc"), "substitute-route"),
        ("B.D_DECOMP", _U, "eq", "D", _add("F", _add("T", "Tc")), "substitute-route"),
        # Absorptions around the alternative route matrix.
        ("C.L_THAT", _U, "eq", _had("L", "That"), "T", "alternative-route"),
        ("C.DHAT_T", _U, "eq", _had("Dhat", "T"), "T", "alternative-route"),
        ("C.LHAT_T", _U, "eq", _had("Lhat", "T"), "T", "alternative-route"),
        ("C.DHAT_THAT", _U, "eq", _had("Dhat", "That"), "That", "alternative-route"),
        ("C.LHAT_THAT", _U, "eq", _had("Lhat", "That"), "That", "alternative-route"),
        ("C.A_T", _U, "eq", _had("A", "T"), "T", "alternative-route"),
        ("C.A_THAT", _U, "eq", _had("A", "That"), "That", "alternative-route"),
        # Absorptions around the indirect flow matrix.
        ("D.DHAT_L", _U, "eq", _had("Dhat", "L"), "L", "indirect-flow"),
        ("D.DHAT_LHAT", _U, "eq", _had("Dhat", "Lhat"), "Lhat", "indirect-flow"),
        ("D.LHAT_L", _U, "eq", _had("Lhat", "L"), "L", "indirect-flow"),
        # Absorptions around the flow and OD matrices.
        ("E.FHAT_F", _U, "eq", _had("Fhat", "F"), "F", "flow-and-od"),
        ("E.DHAT_D", _U, "eq", _had("Dhat", "D"), "D", "flow-and-od"),
        ("E.DHAT_F", _U, "eq", _had("Dhat", "F"), "F", "flow-and-od"),
        ("E.DHAT_FHAT", _U, "eq", _had("Dhat", "Fhat"), "Fhat", "flow-and-od"),
        ("E.A_FHAT", _U, "eq", _had("A", "Fhat"), "Fhat", "flow-and-od"),
        # Hold exactly when every edge carries at least one trajectory.
        ("FU.FHAT_EQ_A", _FU, "eq", "Fhat", "A", "fully-utilized"),
        ("FU.DHAT_EQ_PHAT", _FU, "eq", "Dhat", "Phat", "fully-utilized"),
        # Count-level absorption claims; fail once a cell reaches 2.
        ("CLAIMED.D_TC", _CL, "eq", _had("D", "Tc"), "Tc", "count-level-audit"),
        ("CLAIMED.L_TC", _CL, "eq", _had("L", "Tc"), "Tc", "count-level-audit"),
        # Known-false form kept for counterexample demonstrations.
        ("X.EHAT_L_NEQ_L", _NEG, "eq", _had("Ehat", "L"), "L", "known-false"),
    ]
)

_BY_ID = {spec.id: spec for spec in CATALOGUE}


def list_identities() -> list[IdentitySpec]:
    """The full fixed catalogue, in stable order."""
    return list(CATALOGUE)


def get_identity(identity_id: str) -> IdentitySpec:
    try:
        return _BY_ID[identity_id]
    except KeyError:
        raise UnknownIdentity(f"no catalogued identity named {identity_id!r}") from None


def _symbol_table(s: StructureBundle, u: UtilizationBundle) -> dict[str, CountMatrix]:
    return {
        "A": s.A,
        "P": s.P,
        "Phat": s.Phat,
        "E": s.E,
        "Ehat": s.Ehat,
        "F": u.F,
        "D": u.D,
        "L": u.L,
        "T": u.T,
        "Tc": u.Tc,
        "Fhat": u.Fhat,
        "Dhat": u.Dhat,
        "Lhat": u.Lhat,
        "That": u.That,
        "Tchat": u.Tchat,
        "0": CountMatrix.zeros(s.A.n),
    }


def _eval_expr(expr, env: dict[str, CountMatrix]) -> CountMatrix:
    if isinstance(expr, str):
        try:
            return env[expr]
        except KeyError:
            raise ValueError(f"unknown symbol {expr!r} in expression") from None
    op, lhs, rhs = expr
    left = _eval_expr(lhs, env)
    right = _eval_expr(rhs, env)
    if op == "had":
        return hadamard(left, right)
    if op == "add":
        return ew_add(left, right)
    if op == "sub":
        return ew_sub(left, right)
    raise ValueError(f"unknown operator {op!r} in expression")


def evaluate_identity(
    spec: IdentitySpec, s: StructureBundle, u: UtilizationBundle
) -> IdentityVerdict:
    """Evaluate both sides of one relation; report the first bad cell if any."""
    env = _symbol_table(s, u)
    try:
        lhs = _eval_expr(spec.lhs, env)
        rhs = _eval_expr(spec.rhs, env)
    except UndefinedProduct as e:
        raise UndefinedProduct(f"{spec.id}: {e}") from e
    if spec.relation == "leq":
        bad = lambda a, b: not a <= b  # noqa: E731
    else:
        bad = lambda a, b: a != b  # noqa: E731
    for i, (lr, rr) in enumerate(zip(lhs.cells, rhs.cells)):
        for j, (a, b) in enumerate(zip(lr, rr)):
            if bad(a, b):
                return IdentityVerdict(spec.id, False, Witness(i, j, a, b))
    return IdentityVerdict(spec.id, True)


def audit_dataset(d: Dataset, *, name: str = "") -> AuditReport:
    """Build both bundles and evaluate every catalogued relation."""
    s = build_structure(d.graph)
    u = build_utilization(d, s)
    verdicts = tuple(evaluate_identity(spec, s, u) for spec in CATALOGUE)
    descriptor = {
        "name": name,
        "n": d.graph.n,
        "labels": list(d.graph.labels),
        "edge_count": len(d.graph.edges),
        "trajectory_count": len(d.trajectories),
    }
    return AuditReport(descriptor, verdicts, is_fully_utilized(u, s))


def _falsifies(spec: IdentitySpec, d: Dataset) -> bool:
    s = build_structure(d.graph)
    u = build_utilization(d, s)
    return not evaluate_identity(spec, s, u).holds


def _shrink(spec: IdentitySpec, d: Dataset) -> Dataset:
    # Greedy minimization: drop trajectories, then edges no trajectory uses,
    # keeping each removal only while the dataset still falsifies the
    # relation; repeat until a pass changes nothing.
    changed = True
    while changed:
        changed = False
        trajs = list(d.trajectories)
        i = 0
        while i < len(trajs):
            candidate = Dataset(d.graph, tuple(trajs[:i] + trajs[i + 1 :]))
            if _falsifies(spec, candidate):
                del trajs[i]
                d = candidate
                changed = True
            else:
                i += 1
        used = {
            pair
            for t in d.trajectories
            for pair in zip(t.nodes, t.nodes[1:])
        }
        for edge in sorted(d.graph.edges - used):
            candidate = Dataset(
                Graph(d.graph.labels, d.graph.edges - {edge}), d.trajectories
            )
            if _falsifies(spec, candidate):
                d = candidate
                changed = True
    return d


def search_counterexample(
    identity_id: str,
    budget: int,
    seed: int,
    *,
    allow_duplicates: bool = True,
) -> Dataset | None:
    """Hunt for a dataset falsifying the identity within a budget of instances.

    Random datasets are generated until one falsifies the relation; the hit
    is greedily minimized before being returned.  None means every instance
    in the budget satisfied the relation.  Deterministic for fixed
    (identity_id, budget, seed).
    """
    spec = get_identity(identity_id)
    rng = random.Random(seed)
    for _ in range(budget):
        n = rng.randint(3, 8)
        cfg = GenConfig(
            n=n,
            edge_prob=rng.uniform(0.15, 0.9),
            max_traj=rng.randint(1, 10),
            max_len=rng.randint(2, n),
            allow_duplicates=allow_duplicates,
            seed=rng.getrandbits(63),
        )
        candidate = gen_dataset(cfg)
        if _falsifies(spec, candidate):
            return _shrink(spec, candidate)
    return None


def _expr_to_obj(expr):
    if isinstance(expr, str):
        return expr
    op, lhs, rhs = expr
    return [op, _expr_to_obj(lhs), _expr_to_obj(rhs)]


def _expr_from_obj(obj):
    if isinstance(obj, str):
        if obj not in SYMBOLS:
            raise ValueError(f"unknown symbol {obj!r}")
        return obj
    if isinstance(obj, (list, tuple)) and len(obj) == 3:
        op = obj[0]
        if op not in _OPS:
            raise ValueError(f"unknown operator {op!r}")
        return (op, _expr_from_obj(obj[1]), _expr_from_obj(obj[2]))
    raise ValueError(f"malformed expression {obj!r}")


def catalogue_to_json(indent: int = 2) -> str:
    """Serialize the catalogue for external consumers."""
    entries = [
        {
            "id": spec.id,
            "class": spec.kind.value,
            "relation": spec.relation,
            "lhs": _expr_to_obj(spec.lhs),
            "rhs": _expr_to_obj(spec.rhs),
            "group": spec.group,
            "quote": spec.statement(),
        }
        for spec in CATALOGUE
    ]
    return json.dumps(entries, indent=indent, ensure_ascii=False) + "\n"


def specs_from_json(text: str) -> tuple[IdentitySpec, ...]:
    """Parse identity specs serialized by catalogue_to_json."""
    entries = json.loads(text)
    if not isinstance(entries, list):
        raise ValueError("catalogue JSON must be a list of entries")
    specs = []
    for entry in entries:
        relation = entry.get("relation", "eq")
        if relation not in ("eq", "leq"):
            raise ValueError(f"unknown relation {relation!r}")
        specs.append(
            IdentitySpec(
                id=entry["id"],
                kind=IdentityClass(entry["class"]),
                relation=relation,
                lhs=_expr_from_obj(entry["lhs"]),
                rhs=_expr_from_obj(entry["rhs"]),
                group=entry.get("group", ""),
            )
        )
    return tuple(specs)


def _cell_obj(v):
    return None if v is INF else v


def report_to_json_obj(report: AuditReport) -> dict:
    """JSON-ready form of an audit report (INF encoded as null)."""
    labels = report.descriptor.get("labels", [])
    verdicts = []
    for v in report.verdicts:
        spec = get_identity(v.id)
        entry = {
            "id": v.id,
            "class": spec.kind.value,
            "statement": spec.statement(),
            "holds": v.holds,
            "witness": None,
        }
        if v.witness is not None:
            w = v.witness
            entry["witness"] = {
                "row": w.row,
                "col": w.col,
                "row_label": labels[w.row] if w.row < len(labels) else str(w.row),
                "col_label": labels[w.col] if w.col < len(labels) else str(w.col),
                "lhs": _cell_obj(w.lhs),
                "rhs": _cell_obj(w.rhs),
            }
        verdicts.append(entry)
    return {
        "descriptor": report.descriptor,
        "fully_utilized": report.fully_utilized,
        "sound": report.sound,
        "verdicts": verdicts,
    }


def render_table(report: AuditReport) -> str:
    """Fixed-width verdict table plus a short dataset footer."""
    labels = report.descriptor.get("labels", [])
    rows = []
    for v in report.verdicts:
        spec = get_identity(v.id)
        witness = ""
        if v.witness is not None:
            w = v.witness
            rl = labels[w.row] if w.row < len(labels) else str(w.row)
            cl = labels[w.col] if w.col < len(labels) else str(w.col)
            witness = f"({rl}, {cl}): lhs={w.lhs!r} rhs={w.rhs!r}"
        rows.append(
            (v.id, spec.kind.value, spec.statement(), "holds" if v.holds else "FAILS", witness)
        )
    headers = ("identity", "class", "statement", "verdict", "witness")
    widths = [
        max(len(headers[c]), max((len(r[c]) for r in rows), default=0))
        for c in range(len(headers))
    ]
    lines = [
        "  ".join(h.ljust(widths[c]) for c, h in enumerate(headers)).rstrip(),
        "  ".join("-" * widths[c] for c in range(len(headers))),
    ]
    for r in rows:
        lines.append("  ".join(r[c].ljust(widths[c]) for c in range(len(r))).rstrip())
    dsc = report.descriptor
    lines.append("")
    lines.append(
        f"dataset: {dsc.get('name') or '<in-memory>'} "
        f"(n={dsc.get('n')}, edges={dsc.get('edge_count')}, "
        f"trajectories={dsc.get('trajectory_count')})"
    )
    lines.append(f"fully utilized: {'yes' if report.fully_utilized else 'no'}")
    lines.append(
        "universal + mutual-exclusivity relations: "
        + ("all hold" if report.sound else "VIOLATED")
    )
    return "\n".join(lines) + "\n"
