"""Durable storage: one directory per evaluation, plain JSON files.

Layout::

    <root>/
        hierarchy.json
        sheets/<decisionMakerId>.json
        reports/<timestamp>.report.json   (+ .csv / .md renderings on demand)

Every persisted file carries a ``schemaVersion``; sheets and reports embed the
hierarchy's content hash so judgments and results can never silently mix
across hierarchies.  Writes serialize through a lock file; readers need none.
"""
from __future__ import annotations

import json
import os
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import hierarchy as hmod
from .engine import MODES, Mode, PanelReport, Scorecard
from .hierarchy import Hierarchy
from .judgment import ResponseSheet

SCHEMA_VERSION = 1
AGGREGATE_ID = "AGGREGATE"


class WorkspaceError(Exception):
    pass


class SchemaVersionError(WorkspaceError):
    pass


class HashMismatchError(WorkspaceError):
    pass


class UnsupportedFormatError(ValueError):
    pass


@dataclass
class ReportDocument:
    """A computed panel report plus the metadata needed to trust and render it."""

    created_at: str  # ISO-8601 UTC timestamp
    hierarchy_hash: str
    panel_size: int
    report: PanelReport
    mode_labels: tuple[str, ...] = tuple(m.value for m in MODES)


# ---------------------------------------------------------------------------
# dict <-> engine objects
# ---------------------------------------------------------------------------


def _mode_weights_to_dict(weights) -> dict:
    return {mode.value: dict(weights[mode]) for mode in MODES}


def _mode_weights_from_dict(data) -> dict:
    return {mode: {k: float(v) for k, v in data[mode.value].items()} for mode in MODES}


def scorecard_to_dict(card: Scorecard) -> dict:
    out = {
        "criteriaWeights": _mode_weights_to_dict(card.criteria_weights),
        "localSubWeights": {
            crit: _mode_weights_to_dict(w) for crit, w in card.local_sub_weights.items()
        },
        "globalSubWeights": _mode_weights_to_dict(card.global_sub_weights),
        "alternativeScores": _mode_weights_to_dict(card.alternative_scores),
        "rankings": {mode.value: list(card.rankings[mode]) for mode in MODES},
    }
    if card.decision_maker_id is not None:
        out = {"decisionMakerId": card.decision_maker_id, **out}
    return out


def scorecard_from_dict(data: dict) -> Scorecard:
    return Scorecard(
        decision_maker_id=data.get("decisionMakerId"),
        criteria_weights=_mode_weights_from_dict(data["criteriaWeights"]),
        local_sub_weights={
            crit: _mode_weights_from_dict(w)
            for crit, w in data["localSubWeights"].items()
        },
        global_sub_weights=_mode_weights_from_dict(data["globalSubWeights"]),
        alternative_scores=_mode_weights_from_dict(data["alternativeScores"]),
        rankings={
            mode: list(data["rankings"][mode.value]) for mode in MODES
        },
    )


def report_to_dict(doc: ReportDocument) -> dict:
    return {
        "schemaVersion": SCHEMA_VERSION,
        "metadata": {
            "timestamp": doc.created_at,
            "hierarchyHash": doc.hierarchy_hash,
            "panelSize": doc.panel_size,
        },
        "modeLabels": list(doc.mode_labels),
        "report": {
            "perDecisionMaker": [
                scorecard_to_dict(c) for c in doc.report.per_decision_maker
            ],
            "aggregate": scorecard_to_dict(doc.report.aggregate),
        },
    }


def report_from_dict(data: dict) -> ReportDocument:
    _check_schema(data)
    meta = data["metadata"]
    report = PanelReport(
        per_decision_maker=[
            scorecard_from_dict(c) for c in data["report"]["perDecisionMaker"]
        ],
        aggregate=scorecard_from_dict(data["report"]["aggregate"]),
    )
    return ReportDocument(
        created_at=str(meta["timestamp"]),
        hierarchy_hash=str(meta["hierarchyHash"]),
        panel_size=int(meta["panelSize"]),
        report=report,
        mode_labels=tuple(data["modeLabels"]),
    )


def _check_schema(data: dict) -> None:
    version = data.get("schemaVersion")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"unsupported schemaVersion {version!r}; this build reads version {SCHEMA_VERSION}"
        )


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

_LEVELS = (
    ("criteria", lambda card: card.criteria_weights),
    ("subcriteria", lambda card: card.global_sub_weights),
    ("alternatives", lambda card: card.alternative_scores),
)

CSV_HEADER = "level,node,mode,decisionMaker,weight"


def render_report(doc: ReportDocument, fmt: str) -> bytes:
    """Serialize a report: canonical JSON, flat CSV, or a readable Markdown digest."""
    kind = fmt.lower()
    if kind == "json":
        return (json.dumps(report_to_dict(doc), indent=2) + "\n").encode("utf-8")
    if kind == "csv":
        return _render_csv(doc).encode("utf-8")
    if kind in ("md", "markdown"):
        return _render_markdown(doc).encode("utf-8")
    raise UnsupportedFormatError(f"unsupported report format: {fmt!r}")


def _render_csv(doc: ReportDocument) -> str:
    # One row per (level, node, mode, decision maker or AGGREGATE, weight);
    # full-precision repr keeps the output byte-stable and loss-free.
    cards = [(c.decision_maker_id, c) for c in doc.report.per_decision_maker]
    cards.append((AGGREGATE_ID, doc.report.aggregate))
    lines = [CSV_HEADER]
    for level_name, pick in _LEVELS:
        nodes = list(pick(doc.report.aggregate)[Mode.PESSIMISTIC])
        for node in nodes:
            for mode in MODES:
                for dm_id, card in cards:
                    weight = pick(card)[mode][node]
                    lines.append(f"{level_name},{node},{mode.value},{dm_id},{weight!r}")
    return "\n".join(lines) + "\n"


def _render_markdown(doc: ReportDocument) -> str:
    agg = doc.report.aggregate
    out = [
        "# Panel report",
        "",
        f"- computed: {doc.created_at}",
        f"- decision makers: {doc.panel_size}",
        f"- hierarchy: `{doc.hierarchy_hash[:12]}`",
        "",
    ]
    for level_name, pick in _LEVELS:
        weights = pick(agg)
        out.append(f"## {level_name.capitalize()} (aggregate)")
        out.append("")
        out.append("| node | " + " | ".join(m.value for m in MODES) + " |")
        out.append("|---" * (len(MODES) + 1) + "|")
        for node in weights[Mode.PESSIMISTIC]:
            cells = " | ".join(f"{weights[mode][node]:.6f}" for mode in MODES)
            out.append(f"| {node} | {cells} |")
        out.append("")
    out.append("## Ranking per mode")
    out.append("")
    for mode in MODES:
        ranked = " > ".join(agg.rankings[mode])
        out.append(f"- {mode.value}: {ranked}")
    out.append("")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# Workspace
# ---------------------------------------------------------------------------


def _write_json(path: Path, data: dict) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
    tmp.replace(path)


def _read_json(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


@dataclass
class Workspace:
    root: Path
    hierarchy: Hierarchy
    hierarchy_hash: str = field(init=False)

    def __post_init__(self):
        self.hierarchy_hash = hmod.content_hash(self.hierarchy)

    # -- lifecycle ----------------------------------------------------------

    @classmethod
    def initialize(cls, root: str | os.PathLike, hierarchy: Hierarchy) -> "Workspace":
        """Create the directory layout; the target must be absent or empty."""
        root = Path(root)
        if root.exists() and any(root.iterdir()):
            raise WorkspaceError(f"directory {root} is not empty")
        violations = hmod.validate(hierarchy)
        if violations:
            raise hmod.InvalidHierarchyError(violations)
        (root / "sheets").mkdir(parents=True, exist_ok=True)
        (root / "reports").mkdir(exist_ok=True)
        _write_json(
            root / "hierarchy.json",
            {"schemaVersion": SCHEMA_VERSION, **hmod.to_dict(hierarchy)},
        )
        return cls(root=root, hierarchy=hierarchy)

    @classmethod
    def open(cls, root: str | os.PathLike) -> "Workspace":
        root = Path(root)
        path = root / "hierarchy.json"
        if not path.is_file():
            raise WorkspaceError(f"{root} is not a workspace (no hierarchy.json)")
        data = _read_json(path)
        _check_schema(data)
        return cls(root=root, hierarchy=hmod.from_dict(data))

    @contextmanager
    def _write_lock(self, timeout: float = 10.0):
        """Cross-process single-writer guard; concurrent readers stay lock-free."""
        lock_path = self.root / ".lock"
        deadline = time.monotonic() + timeout
        while True:
            try:
                fd = os.open(lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
                break
            except FileExistsError:
                if time.monotonic() > deadline:
                    raise WorkspaceError(f"workspace is locked by {lock_path}")
                time.sleep(0.02)
        try:
            os.write(fd, str(os.getpid()).encode())
            os.close(fd)
            yield
        finally:
            lock_path.unlink(missing_ok=True)

    # -- sheets --------------------------------------------------------------

    def check_ref(self, ref: str, what: str) -> None:
        if ref == self.hierarchy_hash:
            return
        preset = hmod.PRESETS.get(ref)
        if preset is not None and hmod.content_hash(preset()) == self.hierarchy_hash:
            return
        raise HashMismatchError(
            f"{what} references hierarchy {ref!r}, but this workspace holds "
            f"{self.hierarchy_hash!r}"
        )

    def save_sheet(self, sheet: ResponseSheet) -> Path:
        self.check_ref(sheet.hierarchy_ref, f"sheet {sheet.decision_maker_id!r}")
        path = self.root / "sheets" / f"{sheet.decision_maker_id}.json"
        with self._write_lock():
            _write_json(path, {"schemaVersion": SCHEMA_VERSION, **sheet.to_dict()})
        return path

    def load_sheet(self, decision_maker_id: str) -> ResponseSheet:
        data = _read_json(self.root / "sheets" / f"{decision_maker_id}.json")
        _check_schema(data)
        sheet = ResponseSheet.from_dict(data)
        self.check_ref(sheet.hierarchy_ref, f"sheet {decision_maker_id!r}")
        return sheet

    def list_sheets(self) -> list[ResponseSheet]:
        sheets = []
        for path in sorted((self.root / "sheets").glob("*.json")):
            sheets.append(self.load_sheet(path.stem))
        return sheets

    # -- reports --------------------------------------------------------------

    def save_report(self, doc: ReportDocument) -> Path:
        if doc.hierarchy_hash != self.hierarchy_hash:
            raise HashMismatchError(
                "report was computed against a different hierarchy"
            )
        stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%S%fZ")
        path = self.root / "reports" / f"{stamp}.report.json"
        n = 1
        while path.exists():
            path = self.root / "reports" / f"{stamp}-{n}.report.json"
            n += 1
        with self._write_lock():
            _write_json(path, report_to_dict(doc))
        return path

    def report_ids(self) -> list[str]:
        paths = sorted((self.root / "reports").glob("*.report.json"))
        return [p.name.removesuffix(".report.json") for p in paths]

    def load_report(self, report_id: str | None = None) -> ReportDocument:
        ids = self.report_ids()
        if report_id is None:
            if not ids:
                raise WorkspaceError("no reports computed yet")
            report_id = ids[-1]
        elif report_id not in ids:
            raise WorkspaceError(f"no report with id {report_id!r}")
        doc = report_from_dict(
            _read_json(self.root / "reports" / f"{report_id}.report.json")
        )
        if doc.hierarchy_hash != self.hierarchy_hash:
            raise HashMismatchError(
                f"report {report_id!r} references hierarchy {doc.hierarchy_hash!r}, "
                f"but this workspace holds {self.hierarchy_hash!r}"
            )
        return doc
