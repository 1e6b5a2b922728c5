"""Pydantic models for the transition-system file format and command reports."""

from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, StringConstraints, field_validator, model_validator

from probregex.parser import parse_prob

Letter = Annotated[str, StringConstraints(pattern=r"^[a-z]$")]


# --- Models for the transition-system file format ---
class TransitionRecord(BaseModel):
    """A single transition; ``label`` and ``to`` are both null for termination (✓)."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    from_state: str = Field(alias="from", description="Source state of the transition.")
    label: Letter | None = Field(default=None, description="Letter performed, or null for termination.")
    prob: str = Field(description="Exact probability as 'n/d', a decimal or an integer.")
    to_state: str | None = Field(default=None, alias="to", description="Target state, or null for termination.")

    @field_validator("prob")
    @classmethod
    def _prob_is_rational(cls, value: str) -> str:
        parse_prob(value)
        return value

    @model_validator(mode="after")
    def _label_matches_target(self) -> "TransitionRecord":
        if (self.label is None) != (self.to_state is None):
            raise ValueError("label and to must both be null (termination) or both be set")
        return self

    @property
    def is_termination(self) -> bool:
        return self.label is None


class GptsDocument(BaseModel):
    """Top-level transition-system document."""

    model_config = ConfigDict(extra="forbid")

    alphabet: list[Letter] = Field(description="Letters the system may perform.")
    states: list[str] = Field(description="State identifiers in their canonical order.")
    start: list[str] = Field(default_factory=list, description="Designated start states.")
    transitions: list[TransitionRecord] = Field(default_factory=list, description="All transitions.")


# --- Models for axioms-check reports ---
class SchemaResult(BaseModel):
    """Outcome of checking one axiom schema over random instances."""

    name: str = Field(description="Schema name, e.g. 'C4' or 'Unroll'.")
    passed: int = Field(default=0, description="Instances whose sides were language-equal.")
    failed: int = Field(default=0, description="Instances whose sides were distinguished.")
    skipped: int = Field(default=0, description="Draws rejected as undefined or violating the side condition.")
    failures: list[str] = Field(default_factory=list, description="Rendered counterexamples, one per failure.")

    @property
    def ok(self) -> bool:
        return self.failed == 0


class AxiomsReport(BaseModel):
    """Per-schema outcome of an axioms-check run."""

    seed: int = Field(description="Random seed of the run.")
    trials: int = Field(description="Instances requested per schema.")
    results: list[SchemaResult] = Field(default_factory=list, description="One entry per schema.")

    @property
    def ok(self) -> bool:
        return all(result.ok for result in self.results)
