"""HTTP service for generation, review persistence, and export.

The app is built by a factory so tests can wire in a small trained model and
a temporary store. One generation runs at a time; the store serializes its
own writes, so handlers stay safe under concurrent requests.
"""

from __future__ import annotations

import logging
import tempfile
import threading
from dataclasses import replace
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field, field_validator, model_validator

from ..controls import (
    CefrLevel,
    ControlItem,
    LabeledConceptSet,
    RoleLabel,
    serialize_controls,
)
from ..corpus import sentence_from_text
from ..errors import StatusTransitionError
from ..lexicon import Lexicon
from ..metrics import TfidfTable, diversity
from ..seq2seq import ConceptToSequenceModel, DecoderConfig
from .store import Candidate, ItemStatus, ItemStore, ReviewRecord, export_accepted

logger = logging.getLogger(__name__)

CANDIDATE_SEED_STRIDE = 1009


class GenerateBody(BaseModel):
    concepts: list[str] = Field(min_length=2, max_length=5)
    cefr: str | None = None
    roles: dict[str, str] | None = None
    n: int = Field(default=3, ge=1, le=10)
    seed: int = 0

    @field_validator("concepts")
    @classmethod
    def _concepts_valid(cls, value: list[str]) -> list[str]:
        for concept in value:
            ControlItem(concept=concept)
        if len(set(value)) != len(value):
            raise ValueError("concepts must be unique")
        return value

    @field_validator("cefr")
    @classmethod
    def _cefr_valid(cls, value: str | None) -> str | None:
        if value is not None and value not in CefrLevel.__members__:
            raise ValueError(
                f"cefr must be one of {', '.join(CefrLevel.__members__)}"
            )
        return value

    @field_validator("roles")
    @classmethod
    def _role_values_valid(cls, value: dict[str, str] | None):
        if value is not None:
            allowed = {r.value for r in RoleLabel}
            for concept, role in value.items():
                if role not in allowed:
                    raise ValueError(
                        f"role for {concept!r} must be one of {', '.join(sorted(allowed))}"
                    )
        return value

    @model_validator(mode="after")
    def _role_keys_subset(self):
        if self.roles:
            unknown = set(self.roles) - set(self.concepts)
            if unknown:
                raise ValueError(
                    f"roles name concepts not in the request: {sorted(unknown)}"
                )
        return self

    def labeled_set(self) -> LabeledConceptSet:
        """Roles present: every concept gets a role, OTHER when unnamed."""
        cefr = CefrLevel[self.cefr] if self.cefr is not None else None
        if self.roles is None:
            items = tuple(
                ControlItem(concept=c) for c in sorted(self.concepts)
            )
        else:
            items = tuple(
                ControlItem(
                    concept=c,
                    role=RoleLabel(self.roles.get(c, RoleLabel.OTHER.value)),
                )
                for c in sorted(self.concepts)
            )
        return LabeledConceptSet(items=items, cefr=cefr)


class ReviewBody(BaseModel):
    reviewerId: str = Field(min_length=1)
    grammaticality: int = Field(ge=1, le=4)
    complexity: int = Field(ge=1, le=4)
    plausibility: int = Field(ge=1, le=4)
    candidateIndex: int = Field(default=0, ge=0)
    note: str | None = None


class StatusBody(BaseModel):
    status: str

    @field_validator("status")
    @classmethod
    def _status_valid(cls, value: str) -> str:
        if value not in ItemStatus.__members__:
            raise ValueError(
                f"status must be one of {', '.join(ItemStatus.__members__)}"
            )
        return value


def create_app(
    model: ConceptToSequenceModel,
    store: ItemStore,
    table: TfidfTable,
    lexicon: Lexicon,
    decoder: DecoderConfig | None = None,
) -> FastAPI:
    app = FastAPI(title="conceptgen curation service")
    # the review page may be served from a different origin than the API
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    base_decoder = decoder if decoder is not None else DecoderConfig()
    generation_lock = threading.Lock()

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        details = [
            {
                "field": ".".join(
                    str(part) for part in err["loc"] if part != "body"
                ),
                "message": err["msg"],
            }
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"detail": details})

    def _get_item(item_id: str):
        try:
            return store.get(item_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no item {item_id}")

    @app.post("/generate")
    def generate(body: GenerateBody):
        labeled = body.labeled_set()
        input_tokens = serialize_controls(labeled)
        candidates = []
        with generation_lock:
            for i in range(body.n):
                dcfg = replace(
                    base_decoder, seed=body.seed * CANDIDATE_SEED_STRIDE + i
                )
                try:
                    tokens = model.generate_tokens(input_tokens, dcfg)
                except Exception as exc:
                    logger.exception("generation failed")
                    return JSONResponse(
                        status_code=503,
                        content={
                            "detail": f"generation failed: {exc}",
                            "retriable": True,
                        },
                    )
                sentence = sentence_from_text(
                    " ".join(tokens) if tokens else "<unk>", lexicon
                )
                lemmas = set(sentence.lemmas())
                covered = sum(1 for c in body.concepts if c in lemmas)
                candidates.append(
                    Candidate(
                        text=sentence.raw,
                        metrics={
                            "coverage": 100.0 * covered / len(body.concepts),
                            "length": float(sentence.word_count()),
                            "diversity": diversity([sentence], table, lexicon),
                        },
                    )
                )
        record = store.add_item(
            concepts=body.concepts,
            candidates=candidates,
            cefr=labeled.cefr,
            roles={i.concept: i.role for i in labeled.items if i.role is not None}
            or None,
        )
        return {
            "itemId": record.item_id,
            "candidates": [c.to_dict() for c in record.candidates],
        }

    @app.get("/items")
    def list_items(status: str | None = None):
        parsed = None
        if status is not None:
            if status not in ItemStatus.__members__:
                raise HTTPException(
                    status_code=400,
                    detail=f"status must be one of {', '.join(ItemStatus.__members__)}",
                )
            parsed = ItemStatus(status)
        return {"items": [record.to_dict() for record in store.items(parsed)]}

    @app.get("/items/{item_id}")
    def get_item(item_id: str):
        return _get_item(item_id).to_dict()

    @app.post("/items/{item_id}/review")
    def add_review(item_id: str, body: ReviewBody):
        _get_item(item_id)
        review = ReviewRecord(
            reviewer_id=body.reviewerId,
            grammaticality=body.grammaticality,
            complexity=body.complexity,
            plausibility=body.plausibility,
            candidate_index=body.candidateIndex,
            note=body.note,
        )
        try:
            updated = store.add_review(item_id, review)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return updated.to_dict()

    @app.post("/items/{item_id}/status")
    def set_status(item_id: str, body: StatusBody):
        _get_item(item_id)
        try:
            updated = store.set_status(item_id, ItemStatus(body.status))
        except StatusTransitionError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return updated.to_dict()

    @app.get("/export/accepted")
    def export():
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "accepted.jsonl"
            export_accepted(store, path, lexicon)
            content = path.read_text(encoding="utf-8")
        return PlainTextResponse(content, media_type="application/x-ndjson")

    return app
