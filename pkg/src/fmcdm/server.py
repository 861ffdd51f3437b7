"""Session-oriented HTTP+JSON service driving the questionnaire wizard.

Endpoints::

    POST /sessions                  open or resume a decision maker's session
    GET  /sessions/{id}/question    the current question, one at a time
    POST /sessions/{id}/answer      submit an answer, advance the cursor
    GET  /questions                 the full deterministic question list
    GET  /panel/results             evaluate all complete sheets
    POST /panel/whatif              recompute with one answer swapped, no persistence

Questions follow the deterministic enumeration of the workspace hierarchy's
comparison sets, so every session over the same workspace sees the same
sequence.  Answer submission carries the expected question index as a guard:
retries of an already-applied answer are acknowledged idempotently, anything
else stale is rejected.  Errors use ``{"code", "message", "details"}`` bodies.
"""
from __future__ import annotations

import json
import mimetypes
import re
import secrets
import threading
from copy import deepcopy
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .engine import MODES, evaluate, local_weights
from .fuzzy import CANONICAL_TERMS, UnknownTermError, scale_of
from .hierarchy import comparison_sets
from .judgment import Answer, Favored, Question, ResponseSheet, build_matrix, enumerate_questions
from .workspace import Workspace, scorecard_to_dict

_SESSION_QUESTION = re.compile(r"^/sessions/([^/]+)/question$")
_SESSION_ANSWER = re.compile(r"^/sessions/([^/]+)/answer$")
_DM_ID = re.compile(r"^[A-Za-z0-9._-]+$")


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, details: dict | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.details = details or {}

    def body(self) -> dict:
        return {"code": self.code, "message": str(self), "details": self.details}


@dataclass
class Session:
    token: str
    decision_maker_id: str
    reopened: bool


class DecisionServer(ThreadingHTTPServer):
    """HTTP server bound to one workspace; sheet writes are serialized."""

    daemon_threads = True

    def __init__(self, address, workspace: Workspace, ui_dir: Path | None = None):
        super().__init__(address, _Handler)
        self.workspace = workspace
        self.ui_dir = Path(ui_dir).resolve() if ui_dir else None
        self.sets = comparison_sets(workspace.hierarchy)
        self.questions: list[Question] = enumerate_questions(workspace.hierarchy)
        self.sessions: dict[str, Session] = {}
        self.sheets: dict[str, ResponseSheet] = {}
        self.lock = threading.Lock()
        for sheet in workspace.list_sheets():
            self.sheets[sheet.decision_maker_id] = sheet

    # -- state helpers (caller holds self.lock) ------------------------------

    def answered_keys(self, sheet: ResponseSheet) -> set:
        return {a.key() for a in sheet.answers}

    def cursor_of(self, sheet: ResponseSheet) -> int:
        """Index of the first unanswered question; total when complete."""
        answered = self.answered_keys(sheet)
        for question in self.questions:
            if question.key() not in answered:
                return question.index
        return len(self.questions)

    def progress(self, sheet: ResponseSheet) -> dict:
        cursor = self.cursor_of(sheet)
        total = len(self.questions)
        answered = len(self.answered_keys(sheet))
        return {
            "cursor": cursor,
            "totalQuestions": total,
            "completeness": answered / total if total else 1.0,
            "status": "Complete" if cursor == total else "InProgress",
        }

    def set_fully_answered(self, sheet: ResponseSheet, set_index: int) -> bool:
        answered = self.answered_keys(sheet)
        return all(
            (set_index, frozenset(pair)) in answered
            for pair in self.sets[set_index].pairs()
        )

    def set_preview(self, sheet: ResponseSheet, set_index: int) -> dict:
        comp_set = self.sets[set_index]
        answers = [a for a in sheet.answers if a.set_index == set_index]
        weights = local_weights(build_matrix(comp_set, answers))
        return {
            "setIndex": set_index,
            "context": comp_set.context,
            "level": comp_set.level.value,
            "localWeights": {m.value: weights[m] for m in MODES},
        }


def create_server(
    workspace: Workspace,
    host: str = "127.0.0.1",
    port: int = 0,
    ui_dir: Path | None = None,
) -> DecisionServer:
    """Bind and return the server; ``serve_forever`` is the caller's move."""
    return DecisionServer((host, port), workspace, ui_dir=ui_dir)


class _Handler(BaseHTTPRequestHandler):
    server: DecisionServer
    protocol_version = "HTTP/1.1"
    disable_nagle_algorithm = True
    wbufsize = -1  # buffer each response into a single write

    # -- plumbing -------------------------------------------------------------

    def log_message(self, fmt, *args):  # route access logs to stderr, quietly
        pass

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ApiError(400, "bad_json", f"request body is not valid JSON: {exc}")
        if not isinstance(data, dict):
            raise ApiError(400, "bad_json", "request body must be a JSON object")
        return data

    def _dispatch(self, method: str) -> None:
        try:
            handled = self._route(method)
        except ApiError as exc:
            self._send_json(exc.status, exc.body())
            return
        except Exception as exc:  # pragma: no cover - defensive
            self._send_json(
                500, {"code": "internal_error", "message": str(exc), "details": {}}
            )
            return
        if not handled:
            raise_404 = ApiError(404, "not_found", f"no route for {method} {self.path}")
            self._send_json(raise_404.status, raise_404.body())

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")

    # -- routing --------------------------------------------------------------

    def _route(self, method: str) -> bool:
        path = self.path.split("?", 1)[0]
        if method == "POST" and path == "/sessions":
            self._open_session()
        elif method == "GET" and _SESSION_QUESTION.match(path):
            self._current_question(_SESSION_QUESTION.match(path).group(1))
        elif method == "POST" and _SESSION_ANSWER.match(path):
            self._submit_answer(_SESSION_ANSWER.match(path).group(1))
        elif method == "GET" and path == "/questions":
            self._question_list()
        elif method == "GET" and path == "/panel/results":
            self._panel_results()
        elif method == "POST" and path == "/panel/whatif":
            self._what_if()
        elif method == "GET":
            self._static(path)
        else:
            return False
        return True

    def _session(self, token: str) -> Session:
        session = self.server.sessions.get(token)
        if session is None:
            raise ApiError(404, "unknown_session", f"no session {token!r}")
        return session

    # -- session endpoints ------------------------------------------------------

    def _open_session(self) -> None:
        body = self._read_body()
        dm_id = str(body.get("decisionMakerId") or "").strip()
        if not dm_id:
            raise ApiError(400, "empty_decision_maker_id", "decisionMakerId is required")
        if not _DM_ID.match(dm_id):
            raise ApiError(
                400,
                "bad_decision_maker_id",
                "decisionMakerId may contain letters, digits, '.', '_' and '-' only",
            )
        reopen = bool(body.get("reopen", False))
        srv = self.server
        with srv.lock:
            sheet = srv.sheets.get(dm_id)
            created = sheet is None
            if created:
                sheet = ResponseSheet(dm_id, srv.workspace.hierarchy_hash)
                srv.workspace.save_sheet(sheet)
                srv.sheets[dm_id] = sheet
            progress = srv.progress(sheet)
            if progress["status"] == "Complete" and not reopen:
                raise ApiError(
                    409,
                    "sheet_complete",
                    f"sheet for {dm_id!r} is complete and locked; "
                    "pass reopen=true to revise",
                )
            token = secrets.token_hex(16)
            srv.sessions[token] = Session(token, dm_id, reopened=reopen)
        self._send_json(
            201 if created else 200,
            {"sessionId": token, "decisionMakerId": dm_id, **progress},
        )

    def _current_question(self, token: str) -> None:
        srv = self.server
        with srv.lock:
            session = self._session(token)
            sheet = srv.sheets[session.decision_maker_id]
            progress = srv.progress(sheet)
            if progress["status"] == "Complete":
                raise ApiError(409, "session_complete", "all questions are answered")
            question = srv.questions[progress["cursor"]]
        self._send_json(200, {**question.payload(), "completeness": progress["completeness"]})

    def _submit_answer(self, token: str) -> None:
        body = self._read_body()
        term = str(body.get("term") or "")
        try:
            scale_of(term)
        except UnknownTermError as exc:
            raise ApiError(
                400, "unknown_term", str(exc), {"options": list(CANONICAL_TERMS)}
            )
        favored_raw = str(body.get("favored") or "")
        if favored_raw not in (Favored.FIRST.value, Favored.SECOND.value):
            raise ApiError(400, "bad_favored", "favored must be 'first' or 'second'")
        if "questionIndex" not in body:
            raise ApiError(400, "missing_question_index", "questionIndex is required")
        q_index = int(body["questionIndex"])

        srv = self.server
        with srv.lock:
            session = self._session(token)
            sheet = srv.sheets[session.decision_maker_id]
            cursor = srv.cursor_of(sheet)
            total = len(srv.questions)

            if q_index < 0 or q_index >= total:
                raise ApiError(422, "stale_cursor", f"questionIndex {q_index} out of range")
            question = srv.questions[q_index]
            if str(body.get("first")) != question.first or str(body.get("second")) != question.second:
                raise ApiError(
                    422,
                    "stale_cursor",
                    "echoed pair does not match the addressed question",
                    {"expectedFirst": question.first, "expectedSecond": question.second},
                )

            existing = next(
                (a for a in sheet.answers if a.key() == question.key()), None
            )
            answer = Answer(
                question.set_index, question.first, question.second,
                Favored(favored_raw), scale_of(term).name,
            )

            if existing is not None:
                if (existing.favored, existing.term) == (answer.favored, answer.term):
                    self._answer_response(sheet, question, duplicate=True)
                    return
                if session.reopened:
                    sheet.answers[sheet.answers.index(existing)] = answer
                    srv.workspace.save_sheet(sheet)
                    self._answer_response(sheet, question, duplicate=False)
                    return
                if cursor >= total:
                    raise ApiError(
                        409,
                        "session_complete",
                        "sheet is complete and locked; reopen it to revise",
                    )
                raise ApiError(
                    422,
                    "stale_cursor",
                    "question already answered differently; reopen the sheet to revise",
                )

            if cursor >= total:
                raise ApiError(409, "session_complete", "all questions are answered")
            if q_index != cursor:
                raise ApiError(
                    422,
                    "stale_cursor",
                    f"expected answer for question {cursor}, got {q_index}",
                )
            sheet.add_answer(answer)
            srv.workspace.save_sheet(sheet)
            self._answer_response(sheet, question, duplicate=False)

    def _answer_response(self, sheet: ResponseSheet, question: Question, duplicate: bool) -> None:
        srv = self.server
        progress = srv.progress(sheet)
        preview = None
        set_questions = [q for q in srv.questions if q.set_index == question.set_index]
        is_last_of_set = question.index == set_questions[-1].index
        if srv.set_fully_answered(sheet, question.set_index) and is_last_of_set:
            preview = srv.set_preview(sheet, question.set_index)
        self._send_json(
            200,
            {
                "answered": question.index,
                "duplicate": duplicate,
                "setCompleted": preview,
                **progress,
            },
        )

    def _question_list(self) -> None:
        """The full deterministic enumeration, for pickers and exports."""
        payload = [q.payload() for q in self.server.questions]
        self._send_json(200, {"totalQuestions": len(payload), "questions": payload})

    # -- panel endpoints ---------------------------------------------------------

    def _complete_sheets(self) -> tuple[list[ResponseSheet], list[str]]:
        complete, warnings = [], []
        total = len(self.server.questions)
        for dm_id in sorted(self.server.sheets):
            sheet = self.server.sheets[dm_id]
            if self.server.cursor_of(sheet) == total:
                complete.append(sheet)
            else:
                warnings.append(f"sheet {dm_id!r} is incomplete and was excluded")
        return complete, warnings

    def _panel_results(self) -> None:
        srv = self.server
        with srv.lock:
            complete, warnings = self._complete_sheets()
            if not complete:
                raise ApiError(409, "no_complete_sheets", "no complete sheets to evaluate")
            report = evaluate(srv.workspace.hierarchy, complete)
        self._send_json(
            200,
            {
                "panelSize": len(complete),
                "hierarchyHash": srv.workspace.hierarchy_hash,
                "warnings": warnings,
                "report": {
                    "perDecisionMaker": [
                        scorecard_to_dict(c) for c in report.per_decision_maker
                    ],
                    "aggregate": scorecard_to_dict(report.aggregate),
                },
            },
        )

    def _what_if(self) -> None:
        body = self._read_body()
        term = str(body.get("term") or "")
        try:
            canonical_term = scale_of(term).name
        except UnknownTermError as exc:
            raise ApiError(400, "unknown_term", str(exc))
        favored_raw = str(body.get("favored") or "")
        if favored_raw not in (Favored.FIRST.value, Favored.SECOND.value):
            raise ApiError(400, "bad_favored", "favored must be 'first' or 'second'")

        srv = self.server
        with srv.lock:
            complete, _ = self._complete_sheets()
            if not complete:
                raise ApiError(409, "no_complete_sheets", "no complete sheets to evaluate")

            dm_id = str(body.get("decisionMakerId") or "")
            target = next((s for s in complete if s.decision_maker_id == dm_id), None)
            if target is None:
                raise ApiError(
                    422,
                    "override_not_found",
                    f"no complete sheet for decision maker {dm_id!r}",
                )
            set_index = int(body.get("set", -1))
            first, second = str(body.get("first")), str(body.get("second"))
            pair_key = (set_index, frozenset((first, second)))
            existing = next((a for a in target.answers if a.key() == pair_key), None)
            if existing is None:
                raise ApiError(
                    422,
                    "override_not_found",
                    f"pair ({first}, {second}) in set {set_index} was never answered",
                )

            baseline = evaluate(srv.workspace.hierarchy, complete)
            patched = [deepcopy(s) for s in complete]
            sheet = next(s for s in patched if s.decision_maker_id == dm_id)
            replacement = Answer(set_index, first, second, Favored(favored_raw), canonical_term)
            sheet.answers[
                next(i for i, a in enumerate(sheet.answers) if a.key() == pair_key)
            ] = replacement
            modified = evaluate(srv.workspace.hierarchy, patched)

        base_scores = {
            m.value: dict(baseline.aggregate.alternative_scores[m]) for m in MODES
        }
        new_scores = {
            m.value: dict(modified.aggregate.alternative_scores[m]) for m in MODES
        }
        deltas = {
            mode: {
                alt: new_scores[mode][alt] - base_scores[mode][alt]
                for alt in base_scores[mode]
            }
            for mode in base_scores
        }
        self._send_json(
            200, {"baseline": base_scores, "whatif": new_scores, "deltas": deltas}
        )

    # -- static UI -----------------------------------------------------------------

    def _static(self, path: str) -> None:
        ui_dir = self.server.ui_dir
        if ui_dir is None:
            raise ApiError(404, "not_found", f"no route for GET {path}")
        rel = path.lstrip("/") or "index.html"
        target = (ui_dir / rel).resolve()
        if not target.is_relative_to(ui_dir) or not target.is_file():
            raise ApiError(404, "not_found", f"no file for {path}")
        content_type = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        body = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)
