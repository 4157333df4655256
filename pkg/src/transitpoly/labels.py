"""Canonical label names and deterministic ordering for the wall systems."""

P_LABELS = tuple(f"p{i}" for i in range(8))
M_LABELS = tuple(f"m{i}" for i in range(8))
LETTER_LABELS = ("A", "B", "C", "D", "E", "F")
AUX_LABELS = ("L", "M", "N")
EXTRA_LABELS = ("G", "H")
WALL_LABELS = P_LABELS + M_LABELS + LETTER_LABELS

LABEL_ORDER = {lab: i for i, lab in enumerate(
    P_LABELS + M_LABELS + LETTER_LABELS + EXTRA_LABELS + AUX_LABELS)}


def sort_labels(labels) -> list[str]:
    """Sort with the wall labels first in table order, unknown labels last."""
    return sorted(labels, key=lambda l: (LABEL_ORDER.get(l, len(LABEL_ORDER)), l))
