"""Bundled datasets: minimum monthly water flows (m^3/s) of the Piracicaba
River (Sao Paulo, Brazil), one series per month, 1960-2014."""

from __future__ import annotations

from .distribution import Sample
from .errors import DomainError

MAY = (
    29.19, 18.47, 12.86, 151.11, 19.46, 19.46, 84.30, 19.30, 18.47, 34.12,
    374.54, 19.72, 25.58, 45.74, 68.53, 36.04, 15.92, 21.89, 40.00, 44.10,
    33.35, 35.49, 56.25, 24.29, 23.56, 50.85, 24.53, 13.74, 27.99, 59.27,
    13.31, 41.63, 10.00, 33.62, 32.90, 27.55, 16.76, 47.00, 106.33, 21.03,
)

JUNE = (
    13.64, 39.32, 10.66, 224.07, 40.90, 22.22, 14.44, 23.59, 47.02, 37.01,
    432.11, 10.63, 28.51, 11.77, 25.35, 25.80, 39.73, 9.21, 22.36, 11.63,
    33.35, 18.00, 18.62, 17.71, 100.10, 23.32, 11.63, 10.20, 12.04, 11.63,
    50.57, 11.63, 33.72, 14.69, 12.30, 32.90, 179.75, 37.57, 7.95,
)

JULY = (
    12.98, 15.66, 13.18, 174.94, 10.35, 47.52, 13.28, 24.03, 11.40, 22.71,
    43.96, 9.38, 11.40, 13.28, 14.84, 14.44, 63.74, 12.04, 17.26, 28.74,
    12.25, 10.22, 26.25, 13.31, 28.24, 12.88, 17.71, 8.82, 10.40, 7.67,
    49.15, 17.93, 9.80, 105.88, 10.77, 13.49, 19.77, 34.22, 7.26,
)

AUGUST = (
    16.00, 9.52, 9.43, 53.72, 17.10, 8.52, 10.00, 15.23, 8.78, 28.97,
    28.06, 18.26, 9.69, 51.43, 10.96, 13.74, 20.01, 10.00, 12.46, 10.40,
    26.99, 7.72, 11.84, 18.39, 11.22, 13.10, 16.58, 12.46, 58.98, 7.11,
    11.63, 8.24, 9.80, 15.51, 37.86, 30.20, 8.93, 14.29, 12.98, 12.01,
    6.80,
)

SEPTEMBER = (
    29.19, 8.49, 7.37, 82.93, 44.18, 13.82, 22.28, 28.06, 6.84, 12.14,
    153.78, 17.04, 13.47, 15.43, 30.36, 6.91, 22.12, 35.45, 44.66, 95.81,
    6.18, 10.00, 58.39, 24.05, 17.03, 38.65, 47.17, 27.99, 11.84, 9.60,
    6.72, 13.74, 14.60, 9.65, 10.39, 60.14, 15.51, 14.69, 16.44,
)

BUNDLED: dict[str, tuple[float, ...]] = {
    "may": MAY,
    "june": JUNE,
    "july": JULY,
    "august": AUGUST,
    "september": SEPTEMBER,
}


def load_bundled(name: str) -> Sample:
    """Return one of the bundled monthly series as a validated Sample."""
    key = name.lower()
    if key not in BUNDLED:
        raise DomainError(f"unknown bundled dataset {name!r}; choose from {sorted(BUNDLED)}")
    return Sample(BUNDLED[key])
