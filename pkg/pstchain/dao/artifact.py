import json
import os
import sys
import tempfile
from typing import IO, Optional

import pandas as pd
from pydantic import BaseModel

from ..common.enums import OutputFormat
from ..common.exceptions import UsageError
from ..common.logger import logger
from ..dto.chain import BandMatrixOut
from ..dto.report import SpectrumOut
from ..dto.series import AmplitudeOut, FidelitySeries

CSV_FLOAT_FORMAT = "%.17g"


class ArtifactDAO:
    """Reads run configs and writes result artifacts, each in one atomic step."""

    def read_config(self, path: str) -> dict:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                payload = json.load(handle)
        except FileNotFoundError:
            raise UsageError(f"config file not found: {path}")
        except json.JSONDecodeError as e:
            raise UsageError(f"config file {path} is not valid JSON: {e}")
        if not isinstance(payload, dict):
            raise UsageError(f"config file {path} must hold a JSON object")
        return payload

    def to_frame(self, data: BaseModel) -> pd.DataFrame:
        if isinstance(data, FidelitySeries):
            return pd.DataFrame(
                {"t": data.times, "fidelity": data.fidelity, "endpoint_prob": data.endpoint_prob}
            )
        if isinstance(data, BandMatrixOut):
            n = data.n_sites

            def pad(band):
                # band k has n-k entries; missing trailing cells stay empty
                return list(band) + [None] * (n - len(band))

            return pd.DataFrame(
                {"site": list(range(n)), "diag": data.diag, "band1": pad(data.band1), "band2": pad(data.band2)}
            )
        if isinstance(data, SpectrumOut):
            return pd.DataFrame(
                {
                    "s": list(range(data.N + 1)),
                    "x": data.x,
                    "eigenvalue": data.eigenvalues,
                    "weight": data.weights,
                    "parity": data.parities,
                }
            )
        if isinstance(data, AmplitudeOut):
            return pd.DataFrame(
                {
                    "site": list(range(len(data.amps))),
                    "re": [re for re, _ in data.amps],
                    "im": [im for _, im in data.amps],
                }
            )
        raise UsageError(f"{type(data).__name__} has no CSV form; use --format json")

    def render(self, data: BaseModel, fmt: OutputFormat) -> str:
        if fmt == OutputFormat.CSV:
            return self.to_frame(data).to_csv(
                index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n"
            )
        return json.dumps(data.model_dump(mode="json"), indent=2) + "\n"

    def write(self, text: str, path: Optional[str] = None, stream: Optional[IO[str]] = None) -> None:
        if path is None:
            (stream or sys.stdout).write(text)
            return
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".pstchain-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)
            os.replace(tmp_path, path)
        except Exception:
            if os.path.exists(tmp_path):
                os.remove(tmp_path)
            raise
        logger.info(f"Wrote artifact: {path}")
