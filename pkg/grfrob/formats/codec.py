"""
Reading and writing algebra files.

Group elements are referenced by label throughout; structure constants are
written as the sorted nonzero (i, j, k, coeff) quadruples of b_i·b_j, so a
file produced here reloads and re-serializes to the same text.
"""

import json
import logging
import os
from typing import List, Tuple, Union

import numpy as np
from pydantic import ValidationError

from grfrob.core.grcore import GradedAlgebra, validate_algebra
from grfrob.core.groups import FiniteGroup
from grfrob.formats.schemas import AlgebraFile, BasisEntry, FieldSpec, GroupSpec
from grfrob.utils.errors import InvalidInputError
from grfrob.utils.file_ops import list_algebra_files, read_text_file

logger = logging.getLogger(__name__)


def group_to_spec(G: FiniteGroup) -> GroupSpec:
    return GroupSpec(
        name=G.name,
        elements=list(G.labels),
        table=[[G.label(G.mul(a, b)) for b in G.elements] for a in G.elements],
        identity=G.label(G.identity),
    )


def spec_to_group(spec: GroupSpec) -> FiniteGroup:
    pos = {label: i for i, label in enumerate(spec.elements)}
    if len(pos) != len(spec.elements):
        raise InvalidInputError("group element labels must be distinct")
    table = np.array([[pos[x] for x in row] for row in spec.table], dtype=np.int64)
    return FiniteGroup(tuple(spec.elements), table, pos[spec.identity], name=spec.name)


def algebra_to_file(A: GradedAlgebra, name: str = "") -> AlgebraFile:
    G = A.group
    structure = [[int(i), int(j), int(k), int(A.structure[i, j, k])] for i, j, k in np.argwhere(A.structure)]
    return AlgebraFile(
        name=name or A.label,
        field=FieldSpec(p=A.p),
        group=group_to_spec(G),
        basis=[BasisEntry(name=n, degree=G.label(g)) for n, g in zip(A.names, A.degrees)],
        structure=structure,
        unit=[int(x) for x in A.unit],
    )


def file_to_algebra(spec: AlgebraFile) -> GradedAlgebra:
    """Build and validate the algebra described by a parsed file."""
    G = spec_to_group(spec.group)
    p = spec.field.p
    d = len(spec.basis)
    C = np.zeros((d, d, d), dtype=np.int64)
    for i, j, k, coeff in spec.structure:
        C[i, j, k] = (C[i, j, k] + coeff) % p
    A = GradedAlgebra(
        p,
        G,
        tuple(G.index(b.degree) for b in spec.basis),
        C,
        np.array(spec.unit, dtype=np.int64),
        tuple(b.name for b in spec.basis),
        spec.name,
    )
    report = validate_algebra(A)
    if not report.valid:
        raise InvalidInputError(f"{spec.name or 'algebra'}: {'; '.join(report.violations)}")
    return A


def dump_algebra(A: GradedAlgebra, name: str = "") -> str:
    return json.dumps(algebra_to_file(A, name).model_dump(mode="json"), indent=2) + "\n"


def load_algebra(text: Union[str, bytes]) -> GradedAlgebra:
    """Parse and validate an algebra file; every failure is an InvalidInputError."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"algebra file is not valid JSON: {e}") from e
    try:
        spec = AlgebraFile.model_validate(data)
    except ValidationError as e:
        raise InvalidInputError(f"algebra file does not match the schema: {e}") from e
    A = file_to_algebra(spec)
    logger.debug(f"Loaded {A!r}")
    return A


def read_algebra_file(path: str) -> GradedAlgebra:
    try:
        text = read_text_file(path)
    except OSError as e:
        raise InvalidInputError(f"cannot read {path}: {e}") from e
    return load_algebra(text)


def dump_corpus(entries: List[Tuple[str, GradedAlgebra]], version: str = "1") -> str:
    data = {
        "version": version,
        "instances": [algebra_to_file(A, name).model_dump(mode="json") for name, A in entries],
    }
    return json.dumps(data, indent=2) + "\n"


def load_corpus(path: str) -> List[Tuple[str, GradedAlgebra]]:
    """Named instances from a corpus file, a single algebra file, or a directory of algebra files."""
    if os.path.isdir(path):
        out = []
        for file_path in list_algebra_files(path):
            A = read_algebra_file(file_path)
            out.append((A.label or os.path.splitext(os.path.basename(file_path))[0], A))
        return out
    try:
        data = json.loads(read_text_file(path))
    except OSError as e:
        raise InvalidInputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"corpus file is not valid JSON: {e}") from e
    items = data.get("instances") if isinstance(data, dict) and "instances" in data else data
    if isinstance(items, dict):
        items = [items]
    if not isinstance(items, list):
        raise InvalidInputError("corpus must be a list of algebra files or an object with 'instances'")
    out = []
    for k, item in enumerate(items):
        try:
            spec = AlgebraFile.model_validate(item)
        except ValidationError as e:
            raise InvalidInputError(f"corpus instance {k}: {e}") from e
        A = file_to_algebra(spec)
        out.append((spec.name or f"instance-{k}", A))
    logger.info(f"Loaded {len(out)} instances from {path}")
    return out
