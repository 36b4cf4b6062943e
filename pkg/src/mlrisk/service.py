"""HTTP API over one loaded assessment, backing the browser UI's live
what-if loop.

Reads run concurrently on the threaded server; mutations (PUT assessment,
save) pass through a single-writer lock and must carry the expected revision,
which increments on every accepted change. What-if, sweep, surface and
optimize never touch the session state, so a slider loop cannot corrupt the
assessment; long optimizations run on their request thread and report live
progress through GET /api/optimize/status.
"""

from __future__ import annotations

import json
import mimetypes
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Any

from . import catalog as catalog_mod
from . import cost as cost_mod
from . import optimizer as optimizer_mod
from . import project_io as pio
from . import scoring, sensitivity
from .domain import Assessment, validate_assessment
from .errors import BindFailure, LoadFailure, MlriskError, ParseError, ValidationError
from .optimizer import OptimizationConfig, Strategy

_PLACEHOLDER_PAGE = """<!doctype html>
<html><head><title>mlrisk</title></head>
<body><h1>mlrisk service</h1>
<p>The API is up under <code>/api</code>. No UI bundle is configured;
build the frontend and pass its dist directory to <code>serve --ui</code>.</p>
</body></html>
"""


@dataclass
class SessionState:
    """One assessment, its revision counter and the latest report."""

    assessment: Assessment
    path: Path
    revision: int = 1
    report: scoring.ScoreReport | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    def __post_init__(self) -> None:
        if self.report is None:
            self.report = scoring.evaluate(self.assessment)


class _RiskHTTPServer(ThreadingHTTPServer):
    daemon_threads = True
    allow_reuse_address = True

    def __init__(self, address, handler, state: SessionState, ui_dir: Path | None) -> None:
        super().__init__(address, handler)
        self.state = state
        self.ui_dir = ui_dir
        self.optimize_status = {"running": False, "evaluations": 0, "best_ratio": None}
        self.optimize_lock = threading.Lock()


class _Handler(BaseHTTPRequestHandler):
    server: _RiskHTTPServer
    protocol_version = "HTTP/1.1"

    # -- plumbing ----------------------------------------------------------

    def log_message(self, fmt, *args):  # tests and CLI runs stay quiet
        pass

    def _send(self, code: int, body: bytes, content_type: str) -> None:
        self.send_response(code)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, code: int, doc: Any) -> None:
        self._send(code, pio.dumps_canonical(doc).encode("utf-8"), "application/json; charset=utf-8")

    def _read_json(self) -> Any:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ParseError(None, f"bad request body: {exc}") from exc

    # -- routing -----------------------------------------------------------

    def do_GET(self) -> None:
        try:
            if self.path == "/api/assessment":
                self._get_assessment()
            elif self.path == "/api/catalog":
                self._send_json(200, pio.catalog_to_document(catalog_mod.builtin_catalog()))
            elif self.path == "/api/optimize/status":
                with self.server.optimize_lock:
                    self._send_json(200, dict(self.server.optimize_status))
            elif self.path.startswith("/api/"):
                self._send_json(404, {"error": f"no such endpoint {self.path}"})
            else:
                self._serve_static()
        except MlriskError as exc:
            self._send_json(400, {"error": str(exc)})

    def do_POST(self) -> None:
        routes = {
            "/api/evaluate": self._post_evaluate,
            "/api/whatif": self._post_whatif,
            "/api/sweep": self._post_sweep,
            "/api/surface": self._post_surface,
            "/api/optimize": self._post_optimize,
            "/api/save": self._post_save,
        }
        handler = routes.get(self.path)
        if handler is None:
            self._send_json(404, {"error": f"no such endpoint {self.path}"})
            return
        try:
            handler(self._read_json())
        except ValidationError as exc:
            self._send_json(400, {"error": str(exc), "issues": [str(i) for i in exc.issues]})
        except MlriskError as exc:
            self._send_json(400, {"error": str(exc)})

    def do_PUT(self) -> None:
        if self.path != "/api/assessment":
            self._send_json(404, {"error": f"no such endpoint {self.path}"})
            return
        try:
            self._put_assessment(self._read_json())
        except ValidationError as exc:
            self._send_json(400, {"error": str(exc), "issues": [str(i) for i in exc.issues]})
        except MlriskError as exc:
            self._send_json(400, {"error": str(exc)})

    # -- endpoints ---------------------------------------------------------

    def _get_assessment(self) -> None:
        state = self.server.state
        with state.lock:
            doc = pio.to_document(state.assessment)
            revision = state.revision
        self._send_json(200, {"revision": revision, "assessment": doc})

    def _put_assessment(self, body: Any) -> None:
        state = self.server.state
        if not isinstance(body, dict) or "assessment" not in body:
            raise ParseError(None, "body must be an object with 'revision' and 'assessment'")
        expected = body.get("revision")
        assessment, _ = pio.from_document(body["assessment"], strict=True)
        issues = validate_assessment(assessment)
        if issues:
            raise ValidationError(issues)
        report = scoring.evaluate(assessment)
        with state.lock:
            if expected != state.revision:
                self._send_json(
                    409,
                    {"error": "revision conflict", "revision": state.revision},
                )
                return
            state.assessment = assessment
            state.report = report
            state.revision += 1
            revision = state.revision
        self._send_json(200, {"revision": revision})

    def _post_evaluate(self, body: Any) -> None:
        state = self.server.state
        with state.lock:
            assessment = state.assessment
            report = state.report
            revision = state.revision
        self._send_json(
            200,
            {
                "revision": revision,
                "report": pio.report_to_document(report),
                "cost": pio.cost_report_to_document(cost_mod.cost_report(assessment)),
            },
        )

    def _post_whatif(self, body: Any) -> None:
        scores = body.get("scores") if isinstance(body, dict) else None
        if not isinstance(scores, list):
            raise ParseError(None, "body must be an object with a 'scores' list")
        state = self.server.state
        with state.lock:
            assessment = state.assessment
            revision = state.revision
        hypothetical = scoring.with_scores(assessment, [float(s) for s in scores])
        self._send_json(
            200,
            {
                "revision": revision,
                "report": pio.report_to_document(scoring.evaluate(hypothetical)),
                "cost": pio.cost_report_to_document(cost_mod.cost_report(assessment, scores)),
            },
        )

    def _post_sweep(self, body: Any) -> None:
        if not isinstance(body, dict) or "ef_id" not in body:
            raise ParseError(None, "body must be an object with 'ef_id'")
        with self.server.state.lock:
            assessment = self.server.state.assessment
        result = sensitivity.sweep_ef(
            assessment,
            body["ef_id"],
            steps=int(body.get("steps", 11)),
            baseline=body.get("baseline"),
        )
        self._send_json(200, pio.sweep_to_document(result))

    def _post_surface(self, body: Any) -> None:
        if not isinstance(body, dict) or "ef_x" not in body or "ef_y" not in body:
            raise ParseError(None, "body must be an object with 'ef_x' and 'ef_y'")
        with self.server.state.lock:
            assessment = self.server.state.assessment
        result = sensitivity.efficiency_surface(
            assessment,
            body["ef_x"],
            body["ef_y"],
            fixed=body.get("fixed"),
            resolution=int(body.get("resolution", 11)),
            min_score=float(body.get("min_score", 0.0)),
        )
        self._send_json(200, pio.surface_to_document(result))

    def _post_optimize(self, body: Any) -> None:
        body = body if isinstance(body, dict) else {}
        config = OptimizationConfig(
            min_score=float(body.get("min_score", 0.1)),
            grid_step=float(body.get("grid_step", 0.1)),
            strategy=Strategy(body.get("strategy", "grid")),
            max_iterations=int(body.get("max_iterations", 64)),
            restarts=int(body.get("restarts", 8)),
            seed=int(body.get("seed", 0)),
            evaluation_budget=int(body.get("evaluation_budget", 10_000_000)),
        )
        with self.server.state.lock:
            assessment = self.server.state.assessment

        def progress(evaluations: int, best_ratio: float) -> None:
            with self.server.optimize_lock:
                self.server.optimize_status.update(
                    running=True,
                    evaluations=evaluations,
                    best_ratio=pio.json_number(best_ratio),
                )

        with self.server.optimize_lock:
            self.server.optimize_status.update(running=True, evaluations=0, best_ratio=None)
        try:
            result = optimizer_mod.optimize(assessment, config, progress)
        finally:
            with self.server.optimize_lock:
                self.server.optimize_status["running"] = False
        with self.server.optimize_lock:
            self.server.optimize_status.update(
                evaluations=result.evaluations,
                best_ratio=pio.json_number(result.best_ratio),
            )
        self._send_json(200, {"result": pio.optimization_to_document(result)})

    def _post_save(self, body: Any) -> None:
        state = self.server.state
        expected = body.get("revision") if isinstance(body, dict) else None
        with state.lock:
            if expected is not None and expected != state.revision:
                self._send_json(409, {"error": "revision conflict", "revision": state.revision})
                return
            pio.save_assessment(state.assessment, state.path)
            revision = state.revision
        self._send_json(200, {"saved": str(state.path), "revision": revision})

    # -- static files ------------------------------------------------------

    def _serve_static(self) -> None:
        ui_dir = self.server.ui_dir
        if ui_dir is None:
            if self.path in ("/", "/index.html"):
                self._send(200, _PLACEHOLDER_PAGE.encode("utf-8"), "text/html; charset=utf-8")
            else:
                self._send(404, b"not found", "text/plain; charset=utf-8")
            return
        relative = self.path.lstrip("/") or "index.html"
        target = (ui_dir / relative).resolve()
        if not str(target).startswith(str(ui_dir.resolve())) or not target.is_file():
            self._send(404, b"not found", "text/plain; charset=utf-8")
            return
        content_type = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self._send(200, target.read_bytes(), content_type)


class RiskServer:
    """Running service wrapper; use serve() to construct one."""

    def __init__(self, state: SessionState, bind_address: tuple[str, int], ui_dir: Path | None):
        try:
            self._httpd = _RiskHTTPServer(bind_address, _Handler, state, ui_dir)
        except OSError as exc:
            raise BindFailure(f"cannot bind {bind_address[0]}:{bind_address[1]}: {exc}") from exc
        self._thread = threading.Thread(
            target=lambda: self._httpd.serve_forever(poll_interval=0.05), daemon=True
        )

    @property
    def address(self) -> tuple[str, int]:
        return self._httpd.server_address[:2]

    @property
    def state(self) -> SessionState:
        return self._httpd.state

    def start(self) -> "RiskServer":
        self._thread.start()
        return self

    def wait(self) -> None:
        self._thread.join()

    def shutdown(self) -> None:
        self._httpd.shutdown()
        self._httpd.server_close()


def serve(
    assessment_path: str | Path,
    bind_address: tuple[str, int] = ("127.0.0.1", 8080),
    ui_dir: str | Path | None = None,
) -> RiskServer:
    """Load the assessment, bind the address and start serving.

    Mutations are persisted to the assessment file only via POST /api/save.
    """
    try:
        assessment = pio.load_assessment(assessment_path)
    except MlriskError as exc:
        raise LoadFailure(f"cannot load {assessment_path}: {exc}") from exc
    state = SessionState(assessment=assessment, path=Path(assessment_path))
    return RiskServer(state, bind_address, Path(ui_dir) if ui_dir else None).start()
