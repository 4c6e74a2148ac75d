"""HTTP classification endpoint for the composer UI (or any client).

POST /api/classify takes {"text": "..."} and answers with the label, the
warning string (empty unless label is 1), the six feature flags, the tree
path taken, and the terms that triggered each feature. GET /api/health
reports what is loaded. The model and gazetteers are fixed at startup and
never mutated, so request handling is free of shared state.
"""
from __future__ import annotations

from dataclasses import dataclass

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .features import FeatureVector, GazetteerSet, extract_with_matches
from .tree import DecisionTree, count_leaves, predict

MAX_TEXT_LENGTH = 2000

# The deployed tool warned in plain ASCII; the diacritic spelling is
# offered for UIs that prefer proper Turkish.
WARNING_ASCII = "Konum paylasiyor olabilirsiniz!"
WARNING_TURKISH = "Konum paylaşıyor olabilirsiniz!"


@dataclass(frozen=True)
class Verdict:
    """Outcome of classifying one text."""

    label: int
    features: FeatureVector
    path: list[tuple[int, int]]
    matched_terms: list[tuple[str, str]]


def classify_text(model: DecisionTree, gazetteers: GazetteerSet, text: str) -> Verdict:
    """The one classification code path: extraction, then tree walk.

    Both the CLI and the HTTP endpoint go through here so they can never
    disagree.
    """
    features, matches = extract_with_matches(text, gazetteers)
    label, path = predict(model, features)
    return Verdict(label=label, features=features, path=path, matched_terms=matches)


class ClassifyRequest(BaseModel):
    text: str = Field(min_length=1, max_length=MAX_TEXT_LENGTH)


class ClassifyResponse(BaseModel):
    label: int
    warning: str
    features: dict[str, bool]
    path: list[tuple[str, int]]
    matched_terms: list[tuple[str, str]]


class ModelInfo(BaseModel):
    kind: str
    leaves: int


class HealthResponse(BaseModel):
    status: str
    model: ModelInfo
    gazetteers: dict[str, int]
    warning: str


def create_app(model: DecisionTree, gazetteers: GazetteerSet,
               model_kind: str = "trained",
               warning: str = WARNING_ASCII) -> FastAPI:
    """Build the service around an already-loaded model and gazetteers."""
    app = FastAPI(title="konum-guard", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        detail = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}"
            for err in exc.errors())
        return JSONResponse(status_code=400, content={"error": detail})

    @app.post("/api/classify", response_model=ClassifyResponse)
    def classify(request: ClassifyRequest) -> ClassifyResponse:
        verdict = classify_text(model, gazetteers, request.text)
        return ClassifyResponse(
            label=verdict.label,
            warning=warning if verdict.label == 1 else "",
            features=verdict.features.by_name(),
            path=[(f"feature{idx}", branch) for idx, branch in verdict.path],
            matched_terms=verdict.matched_terms,
        )

    @app.get("/api/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(
            status="ok",
            model=ModelInfo(kind=model_kind, leaves=count_leaves(model)),
            gazetteers=gazetteers.sizes(),
            warning=warning,
        )

    return app
