"""Writers for matrices, spectra and reports."""
import io
import json
from typing import Any, Dict

import numpy as np

from skewspec.core.linalg import IntMatrix, SkewSpectrum


def matrix_csv(matrix: IntMatrix) -> str:
    """One row per line, comma-separated integers."""
    buffer = io.StringIO()
    np.savetxt(buffer, np.asarray(matrix, dtype=np.int64), fmt="%d", delimiter=",")
    return buffer.getvalue()


def spectrum_dict(spectrum: SkewSpectrum) -> Dict[str, Any]:
    return {"values": list(spectrum.values), "multiplicity_paired": True}


def to_json(payload: Any) -> str:
    return json.dumps(payload, indent=2)
