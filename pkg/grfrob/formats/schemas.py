# grfrob/formats/schemas.py

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

SCHEMA_VERSION = "1"


class FieldSpec(BaseModel):
    """Prime field GF(p)"""
    p: int = Field(ge=2, description="Characteristic, verified prime on load")


class GroupSpec(BaseModel):
    """Finite group given by labelled elements and a Cayley table of labels"""
    name: str = Field(default="", description="Optional display name such as C4")
    elements: List[str] = Field(min_length=1, description="Element labels, identity included")
    table: List[List[str]] = Field(description="table[i][j] is the label of elements[i]*elements[j]")
    identity: str = Field(description="Label of the identity element")

    @model_validator(mode="after")
    def check_labels(self):
        known = set(self.elements)
        if self.identity not in known:
            raise ValueError(f"identity {self.identity!r} is not an element")
        if len(self.table) != len(self.elements) or any(len(row) != len(self.elements) for row in self.table):
            raise ValueError("group table must be square with one row per element")
        for row in self.table:
            for entry in row:
                if entry not in known:
                    raise ValueError(f"group table refers to unknown element {entry!r}")
        return self


class BasisEntry(BaseModel):
    name: str
    degree: str = Field(description="Group element label")


class AlgebraFile(BaseModel):
    """Serialized G-graded algebra; structure holds the nonzero (i, j, k, coeff) of b_i·b_j"""
    name: str = Field(default="")
    field: FieldSpec
    group: GroupSpec
    basis: List[BasisEntry] = Field(min_length=1)
    structure: List[List[int]] = Field(default_factory=list)
    unit: List[int]

    @model_validator(mode="before")
    @classmethod
    def normalize_field(cls, values):
        # a bare integer is accepted for the field
        if isinstance(values, dict) and isinstance(values.get("field"), int):
            values = dict(values)
            values["field"] = {"p": values["field"]}
        return values

    @model_validator(mode="after")
    def check_shapes(self):
        d = len(self.basis)
        if len(self.unit) != d:
            raise ValueError(f"unit must have {d} coordinates, got {len(self.unit)}")
        for entry in self.structure:
            if len(entry) != 4:
                raise ValueError(f"structure entries are (i, j, k, coeff) quadruples, got {entry}")
            if any(not 0 <= x < d for x in entry[:3]):
                raise ValueError(f"structure entry {entry} refers to a basis index outside 0..{d - 1}")
        known = set(self.group.elements)
        for b in self.basis:
            if b.degree not in known:
                raise ValueError(f"basis element {b.name!r} has unknown degree {b.degree!r}")
        return self


class ClassificationBlock(BaseModel):
    side: str
    t: int
    multiplicities: List[int]
    shifts: List[List[str]] = Field(description="g_ij as element labels, one list per type")
    inertia: List[List[str]]
    type_dims: List[int]
    census: Dict[str, Any] = Field(default_factory=dict)


class RadicalBlock(BaseModel):
    jgr_dim: int
    jgr_component_dims: Dict[str, int]
    nilpotency_index: Optional[int]
    j_epsilon_dim: int
    graded_semisimple: bool
    socle_left_dim: int
    socle_right_dim: int
    singular_left_dim: int


class NakayamaBlock(BaseModel):
    pi: str = Field(description="Cycle notation on the 1-based type indices")
    sigmas: List[str]
    inertia_conjugation: bool


class FaithfulnessRow(BaseModel):
    sigma: str
    left: bool
    right: bool


class FrobeniusBlock(BaseModel):
    graded_qf: bool
    qf_failure: Optional[str] = None
    sigma_set: List[str]
    graded_frobenius: bool
    faithfulness: List[FaithfulnessRow]


class RouteRow(BaseModel):
    sigma: str
    routes: Dict[str, Optional[bool]]
    agree: bool


class CrossCheckBlock(BaseModel):
    routes: List[RouteRow]
    all_agree: bool


class AlgebraSummary(BaseModel):
    name: str
    p: int
    group: str
    group_order: int
    dim: int
    support: List[str]


class ReportFile(BaseModel):
    """Analysis report; blocks missing from a classify-only run stay null"""
    schema_version: str = SCHEMA_VERSION
    seed: int
    algebra: AlgebraSummary
    classification: List[ClassificationBlock]
    radical: Optional[RadicalBlock] = None
    nakayama: Optional[NakayamaBlock] = None
    frobenius: Optional[FrobeniusBlock] = None
    cross_check: Optional[CrossCheckBlock] = None
