"""
File operations for algebra files, corpora and reports
"""

import os
import re
from typing import List

from grfrob.utils.errors import InvalidInputError


def ensure_directory(directory: str) -> None:
    """Ensure directory exists"""
    if directory:
        os.makedirs(directory, exist_ok=True)


def read_text_file(file_path: str) -> str:
    """Read a UTF-8 text file; any other encoding is an input error"""
    with open(file_path, 'rb') as f:
        raw = f.read()
    try:
        return raw.decode('utf-8')
    except UnicodeDecodeError as e:
        raise InvalidInputError(f"{file_path} is not valid UTF-8: {e}") from e


def write_text_file(file_path: str, content: str) -> None:
    """Write text file"""
    ensure_directory(os.path.dirname(file_path))
    with open(file_path, 'w', encoding='utf-8') as f:
        f.write(content)


def slugify(name: str) -> str:
    """File-name-safe version of an instance name"""
    slug = re.sub(r"[^A-Za-z0-9._-]+", "_", name).strip("_")
    return slug or "algebra"


def list_algebra_files(directory: str) -> List[str]:
    """Sorted *.json files of a corpus directory"""
    return sorted(
        os.path.join(directory, f) for f in os.listdir(directory) if f.endswith(".json")
    )
