"""Command line entry point: workspace setup, batch import, computation, serving.

Exit codes: 0 success, 2 validation, 3 filesystem precondition, 4 integrity,
5 insufficient data, 6 network.  Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import click

from . import engine, hierarchy as hmod, judgment, workspace as wsmod
from .fuzzy import UnknownTermError, scale_of
from .server import create_server

EXIT_VALIDATION = 2
EXIT_FILESYSTEM = 3
EXIT_INTEGRITY = 4
EXIT_INSUFFICIENT = 5
EXIT_NETWORK = 6


def _fail(code: int, message: str):
    click.echo(message, err=True)
    sys.exit(code)


workspace_option = click.option(
    "--workspace",
    "workspace_path",
    envvar="FMCDM_WORKSPACE",
    required=True,
    type=click.Path(path_type=Path),
    help="Workspace directory (defaults to $FMCDM_WORKSPACE).",
)


def _open_workspace(path: Path) -> wsmod.Workspace:
    try:
        return wsmod.Workspace.open(path)
    except (wsmod.WorkspaceError, wsmod.SchemaVersionError, hmod.InvalidHierarchyError,
            json.JSONDecodeError, KeyError) as exc:
        _fail(EXIT_VALIDATION, f"cannot open workspace {path}: {exc}")


@click.group()
@click.version_option()
def main():
    """Questionnaire-driven group decision evaluation with fuzzy judgments."""


@main.command()
@workspace_option
@click.option("--hierarchy", "hierarchy_file", type=click.Path(path_type=Path),
              help="Hierarchy definition (JSON).")
@click.option("--preset", "preset_name", help="Name of a built-in hierarchy.")
def init(workspace_path: Path, hierarchy_file: Path | None, preset_name: str | None):
    """Create a workspace around a hierarchy."""
    if (hierarchy_file is None) == (preset_name is None):
        raise click.UsageError("provide exactly one of --hierarchy or --preset")

    if preset_name is not None:
        factory = hmod.PRESETS.get(preset_name)
        if factory is None:
            _fail(EXIT_VALIDATION,
                  f"unknown preset {preset_name!r}; available: {', '.join(hmod.PRESETS)}")
        h = factory()
    else:
        try:
            h = hmod.from_dict(json.loads(hierarchy_file.read_text(encoding="utf-8")))
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            _fail(EXIT_VALIDATION, f"cannot read hierarchy file: {exc}")
        violations = hmod.validate(h)
        if violations:
            for violation in violations:
                click.echo(violation, err=True)
            sys.exit(EXIT_VALIDATION)

    if workspace_path.exists() and any(workspace_path.iterdir()):
        _fail(EXIT_FILESYSTEM, f"directory {workspace_path} is not empty")
    ws = wsmod.Workspace.initialize(workspace_path, h)
    sets = hmod.comparison_sets(ws.hierarchy)
    click.echo(f"{len(sets)} comparison sets, {hmod.question_count(ws.hierarchy)} questions")


@main.command()
@workspace_option
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
              show_default=True)
def questions(workspace_path: Path, fmt: str):
    """Emit the deterministic question list."""
    ws = _open_workspace(workspace_path)
    qs = judgment.enumerate_questions(ws.hierarchy)
    if fmt == "json":
        click.echo(json.dumps([q.payload() for q in qs], indent=2))
    else:
        click.echo("index,level,context,first,second,options")
        for q in qs:
            options = "|".join(q.payload()["options"])
            click.echo(f"{q.index},{q.level.value},{q.context},{q.first},{q.second},{options}")


def _validate_sheet_schema(data: dict) -> list[str]:
    """Hierarchy-independent problems: schema, fields, terms, duplicates."""
    errors: list[str] = []
    if data.get("schemaVersion") != wsmod.SCHEMA_VERSION:
        errors.append(f"unsupported schemaVersion {data.get('schemaVersion')!r}")
    for field in ("decisionMakerId", "hierarchyRef", "answers"):
        if field not in data:
            errors.append(f"missing field {field!r}")
    if errors:
        return errors

    seen = set()
    for i, item in enumerate(data["answers"]):
        where = f"answers[{i}]"
        missing = [f for f in ("set", "first", "second", "favored", "term") if f not in item]
        if missing:
            errors.append(f"{where}: missing {', '.join(missing)}")
            continue
        try:
            scale_of(str(item["term"]))
        except UnknownTermError as exc:
            errors.append(f"{where}: {exc}")
        if item["favored"] not in ("first", "second"):
            errors.append(f"{where}: favored must be 'first' or 'second'")
        if item["first"] == item["second"]:
            errors.append(f"{where}: pair names the same node twice")
        key = (item["set"], frozenset((str(item["first"]), str(item["second"]))))
        if key in seen:
            errors.append(f"{where}: duplicate answer for pair "
                          f"({item['first']}, {item['second']})")
        seen.add(key)
    return errors


def _validate_sheet_structure(data: dict, ws: wsmod.Workspace) -> list[str]:
    """Problems only visible against the workspace hierarchy."""
    errors: list[str] = []
    sets = hmod.comparison_sets(ws.hierarchy)
    for i, item in enumerate(data["answers"]):
        where = f"answers[{i}]"
        set_index = item["set"]
        if not isinstance(set_index, int) or not 0 <= set_index < len(sets):
            errors.append(f"{where}: set index {set_index!r} out of range")
            continue
        members = sets[set_index].members
        for end in ("first", "second"):
            if item[end] not in members:
                errors.append(f"{where}: node {item[end]!r} not in comparison set {set_index}")
    return errors


@main.command("import")
@workspace_option
@click.option("--sheet", "sheet_files", type=click.Path(path_type=Path), multiple=True,
              required=True, help="Response sheet JSON file (repeatable).")
def import_sheets(workspace_path: Path, sheet_files: tuple[Path, ...]):
    """Validate and store response sheets, printing per-sheet diagnostics."""
    ws = _open_workspace(workspace_path)
    total = hmod.question_count(ws.hierarchy)
    sets = hmod.comparison_sets(ws.hierarchy)

    parsed = []
    for path in sheet_files:
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            _fail(EXIT_VALIDATION, f"{path}: {exc}")
        errors = _validate_sheet_schema(data)
        if errors:
            for error in errors:
                click.echo(f"{path}: {error}", err=True)
            sys.exit(EXIT_VALIDATION)
        try:
            ws.check_ref(str(data["hierarchyRef"]), f"sheet {data['decisionMakerId']!r}")
        except wsmod.HashMismatchError as exc:
            _fail(EXIT_INTEGRITY, f"{path}: {exc}")
        errors = _validate_sheet_structure(data, ws)
        if errors:
            for error in errors:
                click.echo(f"{path}: {error}", err=True)
            sys.exit(EXIT_VALIDATION)
        parsed.append(judgment.ResponseSheet.from_dict(data))

    for sheet in parsed:
        ws.save_sheet(sheet)
        answered = total - len(judgment.completeness(sheet, ws.hierarchy).unanswered)
        line = f"{sheet.decision_maker_id}: {answered}/{total} complete"
        scores = []
        grouped = sheet.answers_by_set()
        for set_index, comp_set in enumerate(sets):
            if len(comp_set.members) < 3:
                continue
            answers = grouped.get(set_index, [])
            if len(answers) == len(comp_set.pairs()):
                matrix = judgment.build_matrix(comp_set, answers)
                scores.append(judgment.additive_inconsistency(matrix))
        if scores:
            line += (f"; additive inconsistency mean={sum(scores) / len(scores):.4f}"
                     f" max={max(scores):.4f}")
        click.echo(line)


def _complete_sheets(ws: wsmod.Workspace) -> list[judgment.ResponseSheet]:
    complete = []
    for sheet in ws.list_sheets():
        done = judgment.completeness(sheet, ws.hierarchy)
        if done.unanswered:
            click.echo(
                f"warning: sheet {sheet.decision_maker_id!r} is incomplete "
                f"({len(done.unanswered)} unanswered) and was excluded", err=True)
        else:
            complete.append(sheet)
    return complete


@main.command()
@workspace_option
def compute(workspace_path: Path):
    """Evaluate all complete sheets and store a timestamped report."""
    ws = _open_workspace(workspace_path)
    complete = _complete_sheets(ws)
    if not complete:
        _fail(EXIT_INSUFFICIENT, "no complete sheets; nothing to compute")
    report = engine.evaluate(ws.hierarchy, complete)
    doc = wsmod.ReportDocument(
        created_at=datetime.now(timezone.utc).isoformat(),
        hierarchy_hash=ws.hierarchy_hash,
        panel_size=len(complete),
        report=report,
    )
    path = ws.save_report(doc)
    click.echo(path.name.removesuffix(".report.json"))


@main.command()
@workspace_option
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "md"]), default="json",
              show_default=True)
@click.option("--id", "report_id", default=None, help="Report id (defaults to latest).")
@click.option("--out", "out_file", type=click.Path(path_type=Path), default=None,
              help="Write to a file instead of stdout.")
def report(workspace_path: Path, fmt: str, report_id: str | None, out_file: Path | None):
    """Render a stored report as JSON, CSV, or Markdown."""
    ws = _open_workspace(workspace_path)
    try:
        doc = ws.load_report(report_id)
    except wsmod.HashMismatchError as exc:
        _fail(EXIT_INTEGRITY, str(exc))
    except wsmod.WorkspaceError as exc:
        _fail(EXIT_INSUFFICIENT, str(exc))
    try:
        payload = wsmod.render_report(doc, fmt)
    except wsmod.UnsupportedFormatError as exc:
        _fail(EXIT_VALIDATION, str(exc))
    if out_file is not None:
        out_file.write_bytes(payload)
        click.echo(f"wrote {out_file}", err=True)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()


@main.command()
@workspace_option
@click.option("--listen", "listen", default="127.0.0.1:8764", show_default=True,
              metavar="ADDR:PORT")
@click.option("--ui-dir", "ui_dir", type=click.Path(path_type=Path), default=None,
              help="Serve this static bundle at the root path.")
def serve(workspace_path: Path, listen: str, ui_dir: Path | None):
    """Run the questionnaire HTTP service (and optionally the browser UI)."""
    ws = _open_workspace(workspace_path)
    host, _, port_text = listen.rpartition(":")
    if not host or not port_text.isdigit():
        raise click.UsageError(f"--listen must look like ADDR:PORT, got {listen!r}")
    if ui_dir is not None and not ui_dir.is_dir():
        _fail(EXIT_FILESYSTEM, f"--ui-dir {ui_dir} is not a directory")
    try:
        httpd = create_server(ws, host, int(port_text), ui_dir=ui_dir)
    except OSError as exc:
        _fail(EXIT_NETWORK, f"cannot bind {listen}: {exc}")
    bound_host, bound_port = httpd.server_address[:2]
    click.echo(f"listening on http://{bound_host}:{bound_port}", err=True)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()


if __name__ == "__main__":
    main()
