"""
Result Repository Implementation

Writes run results below one output directory. Only the command layer calls
it, after all computation has finished.
"""

import json
import logging
from pathlib import Path
from typing import List, Optional, Union

import pandas as pd

from app.domain.repositories.result_repository import IResultRepository

logger = logging.getLogger(__name__)


class FileResultRepository(IResultRepository):
    """JSON and CSV files under a base directory"""

    def __init__(self, base_dir: Union[str, Path]):
        self.base_dir = Path(base_dir)

    def _target(self, name: str) -> Path:
        path = self.base_dir / name
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def save_json(self, name: str, payload: dict) -> Path:
        path = self._target(name)
        text = json.dumps(payload, indent=2, sort_keys=True)
        path.write_text(text + "\n", encoding="utf-8")
        logger.info(f"Wrote {path}")
        return path

    def save_table(self, name: str, rows: List[dict], columns: Optional[List[str]] = None) -> Path:
        path = self._target(name)
        frame = pd.DataFrame(rows, columns=columns)
        frame.to_csv(path, index=False, lineterminator="\n")
        logger.info(f"Wrote {len(frame)} rows to {path}")
        return path

    @staticmethod
    def load_json(path: Union[str, Path]) -> dict:
        """Read a JSON document written by save_json"""
        with Path(path).open("r", encoding="utf-8") as f:
            return json.load(f)
