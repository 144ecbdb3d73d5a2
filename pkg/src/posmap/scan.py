"""Parameter-plane raster scans and their CSV / SVG emission.

A scan classifies every cell of a rectangular (alpha, beta) raster at the
cell center, either from the closed-form predicates, from the numeric
oracle, or from both ("compare" mode, which records disagreements).  Cells
are stored row-major with the alpha index outermost; beta runs along the
horizontal axis of all outputs, matching the orientation of the region
figures.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import oracle, regions
from .regions import Classification

MODES = ("closed_form", "numeric", "compare")

# CSV column names, in header order, with the Classification attribute each maps to
CSV_FIELDS = (
    "positive", "two_positive", "cp", "ccp",
    "pos_not_cp", "two_pos_not_cp", "decomp_suff", "decomp_and_2pos",
)
FIELD_ATTRS = {
    "positive": "positive",
    "two_positive": "two_positive",
    "cp": "completely_positive",
    "ccp": "completely_copositive",
    "pos_not_cp": "positive_not_cp",
    "two_pos_not_cp": "two_positive_not_cp",
    "decomp_suff": "decomposable_sufficient",
    "decomp_and_2pos": "decomposable_and_two_positive",
}
CSV_HEADER = "alpha,beta," + ",".join(CSV_FIELDS)

# predicates cross-checked against the oracle in compare mode
COMPARE_PREDICATES = ("positive", "two_positive", "cp")

# layers emitted by a default scan, one per region figure
DEFAULT_LAYERS = ("positive", "cp", "pos_not_cp", "decomp_suff")


@dataclass(frozen=True)
class ScanConfig:
    """Axis ranges, raster resolution and evaluation mode of one scan."""

    alpha_min: float = -4.0
    alpha_max: float = 4.0
    beta_min: float = -4.0
    beta_max: float = 4.0
    resolution: int = 401
    mode: str = "closed_form"
    n: int = 3
    seed: int = 0
    output_paths: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.alpha_min < self.alpha_max:
            raise ValueError(f"need alpha_min < alpha_max, got {self.alpha_min}, {self.alpha_max}")
        if not self.beta_min < self.beta_max:
            raise ValueError(f"need beta_min < beta_max, got {self.beta_min}, {self.beta_max}")
        if self.resolution < 2:
            raise ValueError(f"resolution must be >= 2, got {self.resolution}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.mode != "closed_form" and self.n != 3:
            raise ValueError(f"{self.mode} mode requires n = 3, got n={self.n}")

    def alphas(self) -> np.ndarray:
        """Cell-center alpha values, ascending."""
        step = (self.alpha_max - self.alpha_min) / self.resolution
        return self.alpha_min + (np.arange(self.resolution) + 0.5) * step

    def betas(self) -> np.ndarray:
        """Cell-center beta values, ascending."""
        step = (self.beta_max - self.beta_min) / self.resolution
        return self.beta_min + (np.arange(self.resolution) + 0.5) * step


@dataclass
class RegionGrid:
    """Classified raster; cells are row-major with index i*resolution + j
    for alpha index i and beta index j."""

    config: ScanConfig
    cells: list[Classification]
    mismatches: list[tuple[int, str]] = field(default_factory=list)

    def cell(self, i: int, j: int) -> Classification:
        return self.cells[i * self.config.resolution + j]

    def layer(self, name: str) -> np.ndarray:
        """One CSV field as a boolean (resolution, resolution) array."""
        attr = FIELD_ATTRS[name]
        res = self.config.resolution
        vals = [bool(getattr(c, attr)) for c in self.cells]
        return np.array(vals, dtype=bool).reshape(res, res)


def _closed_form_cells(config: ScanConfig) -> list[Classification]:
    alphas = config.alphas()
    if config.n != 3:
        bounds = [regions.positivity_boundary(b, config.n) for b in config.betas()]
        return [Classification(positive=bool(a >= bd)) for a in alphas for bd in bounds]
    cols = [regions.boundaries_at(b) for b in config.betas()]
    return [regions.classify_at(a, col) for a in alphas for col in cols]


def _numeric_layers(config: ScanConfig) -> dict[str, np.ndarray]:
    alphas, betas = config.alphas(), config.betas()
    names = ("positive", "two_positive", "cp", "ccp", "half1_ccp", "half2_cp")
    return {name: oracle.grid_psd_verdicts(name, alphas, betas, n=config.n)
            for name in names}


def _numeric_cells(layers: dict[str, np.ndarray], res: int) -> list[Classification]:
    pos, twop = layers["positive"], layers["two_positive"]
    cp, ccp = layers["cp"], layers["ccp"]
    decomp = layers["half1_ccp"] & layers["half2_cp"]
    cells = []
    for i in range(res):
        for j in range(res):
            c, t = bool(cp[i, j]), bool(twop[i, j])
            d = bool(decomp[i, j])
            cells.append(Classification(
                positive=bool(pos[i, j]),
                two_positive=t,
                completely_positive=c,
                completely_copositive=bool(ccp[i, j]),
                positive_not_cp=bool(pos[i, j]) and not c,
                two_positive_not_cp=t and not c,
                decomposable_sufficient=d,
                decomposable_and_two_positive=d and t and not c,
            ))
    return cells


def scan(config: ScanConfig) -> RegionGrid:
    """Classify the whole raster; compare mode also records oracle mismatches."""
    if config.mode == "closed_form":
        return RegionGrid(config, _closed_form_cells(config))
    res = config.resolution
    layers = _numeric_layers(config)
    if config.mode == "numeric":
        return RegionGrid(config, _numeric_cells(layers, res))
    cells = _closed_form_cells(config)
    mismatches = []
    for name in COMPARE_PREDICATES:
        numeric = layers[name]
        attr = FIELD_ATTRS[name]
        for i in range(res):
            base = i * res
            for j in range(res):
                if bool(getattr(cells[base + j], attr)) != bool(numeric[i, j]):
                    mismatches.append((base + j, name))
    mismatches.sort()
    return RegionGrid(config, cells, mismatches)


def boundary_distance(config: ScanConfig, index: int, predicate: str) -> float:
    """Vertical distance from a cell center to the predicate's boundary curve."""
    res = config.resolution
    alpha = config.alphas()[index // res]
    beta = config.betas()[index % res]
    curves = {
        "positive": regions.positivity_boundary,
        "two_positive": regions.two_positivity_boundary,
        "cp": regions.cp_boundary,
    }
    return abs(alpha - curves[predicate](beta))


# --- CSV -------------------------------------------------------------------

def _flag(value) -> str:
    if value is None:
        return ""
    return "1" if value else "0"


def emit_csv(grid: RegionGrid, path) -> None:
    """Write the raster as CSV: header, then one row-major line per cell."""
    alphas = grid.config.alphas()
    betas = grid.config.betas()
    res = grid.config.resolution
    lines = [CSV_HEADER]
    for i in range(res):
        a = f"{alphas[i]:.9e}"
        base = i * res
        for j in range(res):
            cell = grid.cells[base + j]
            flags = ",".join(_flag(getattr(cell, FIELD_ATTRS[f])) for f in CSV_FIELDS)
            lines.append(f"{a},{betas[j]:.9e},{flags}")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_region_csv(path) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    """Read back an emitted CSV; returns (coords (N, 2), field -> int array).

    Flag value -1 stands for an empty (unavailable) field.
    """
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header!r}")
        coords = []
        flags: dict[str, list[int]] = {f: [] for f in CSV_FIELDS}
        for line in fh:
            parts = line.rstrip("\n").split(",")
            if len(parts) != 2 + len(CSV_FIELDS):
                raise ValueError(f"malformed CSV row {line!r}")
            coords.append((float(parts[0]), float(parts[1])))
            for name, tok in zip(CSV_FIELDS, parts[2:]):
                flags[name].append(-1 if tok == "" else int(tok))
    return np.array(coords), {k: np.array(v) for k, v in flags.items()}


# --- SVG -------------------------------------------------------------------

LAYER_COLORS = {
    "positive": "#9ecae1",
    "two_positive": "#4292c6",
    "cp": "#fb6a4a",
    "ccp": "#fcae91",
    "pos_not_cp": "#74c476",
    "two_pos_not_cp": "#238b45",
    "decomp_suff": "#c994c7",
    "decomp_and_2pos": "#88419d",
}

BOUNDARY_CURVES = {
    "positive": lambda b: regions.positivity_boundary(b, 3),
    "cp": regions.cp_boundary,
    "two_positive": regions.two_positivity_boundary,
    "decomposable": regions.decomposability_boundary,
}

BOUNDARY_COLORS = {
    "positive": "#08519c",
    "cp": "#a63603",
    "two_positive": "#006d2c",
    "decomposable": "#4d004b",
}

# boundary curves governing the raster transitions of each layer
LAYER_EDGES = {
    "positive": ("positive",),
    "two_positive": ("two_positive",),
    "cp": ("cp",),
    "ccp": ("cp",),
    "pos_not_cp": ("positive", "cp"),
    "two_pos_not_cp": ("two_positive", "cp"),
    "decomp_suff": ("decomposable",),
    "decomp_and_2pos": ("decomposable", "two_positive", "cp"),
}


def boundary_polyline(name: str, config: ScanConfig) -> list[tuple[float, float]]:
    """(beta, alpha) samples of one boundary curve at ``resolution`` points
    spanning the beta range inclusively."""
    curve = BOUNDARY_CURVES[name]
    betas = np.linspace(config.beta_min, config.beta_max, config.resolution)
    return [(float(b), float(curve(float(b)))) for b in betas]


def emit_plot(grid: RegionGrid, path, layer: str) -> None:
    """Write one layer as an SVG raster with boundary polylines.

    The plot body sits inside a group whose transform maps data coordinates
    to screen, so every rect and polyline carries raw (beta, alpha) values:
    one filled rect per true cell, plus the four boundary curves sampled at
    ``resolution`` points each.
    """
    if layer not in FIELD_ATTRS:
        raise ValueError(f"unknown layer {layer!r}; choose from {CSV_FIELDS}")
    cfg = grid.config
    width, height = 720, 720
    ml, mr, mt, mb = 60, 20, 40, 50
    plot_w, plot_h = width - ml - mr, height - mt - mb
    sx = plot_w / (cfg.beta_max - cfg.beta_min)
    sy = plot_h / (cfg.alpha_max - cfg.alpha_min)
    tx = ml - cfg.beta_min * sx
    ty = mt + cfg.alpha_max * sy

    res = cfg.resolution
    da = (cfg.alpha_max - cfg.alpha_min) / res
    db = (cfg.beta_max - cfg.beta_min) / res
    mask = grid.layer(layer)
    fill = LAYER_COLORS[layer]

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2}" y="24" text-anchor="middle" font-size="18">{layer}</text>',
        f'<text x="{width / 2}" y="{height - 12}" text-anchor="middle" font-size="16">&#946;</text>',
        f'<text x="18" y="{height / 2}" text-anchor="middle" font-size="16" '
        f'transform="rotate(-90 18 {height / 2})">&#945;</text>',
        f'<g transform="translate({tx!r},{ty!r}) scale({sx!r},{-sy!r})">',
    ]
    alpha0, beta0 = cfg.alpha_min, cfg.beta_min
    for i in range(res):
        row = mask[i]
        ai = alpha0 + i * da
        for j in range(res):
            if row[j]:
                parts.append(
                    f'<rect class="cell" x="{(beta0 + j * db)!r}" y="{ai!r}" '
                    f'width="{db!r}" height="{da!r}" fill="{fill}"/>'
                )
    for name in BOUNDARY_CURVES:
        pts = " ".join(f"{b!r},{a!r}" for b, a in boundary_polyline(name, cfg))
        parts.append(
            f'<polyline id="boundary-{name}" points="{pts}" fill="none" '
            f'stroke="{BOUNDARY_COLORS[name]}" stroke-width="1.6" '
            'vector-effect="non-scaling-stroke"/>'
        )
    parts.append('</g>')
    # frame and corner tick labels, in screen coordinates
    parts.append(
        f'<rect x="{ml}" y="{mt}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="black" stroke-width="1"/>'
    )
    for frac, value in ((0.0, cfg.beta_min), (0.5, (cfg.beta_min + cfg.beta_max) / 2), (1.0, cfg.beta_max)):
        parts.append(
            f'<text x="{ml + frac * plot_w}" y="{height - 30}" text-anchor="middle" '
            f'font-size="12">{value:g}</text>'
        )
    for frac, value in ((0.0, cfg.alpha_max), (0.5, (cfg.alpha_min + cfg.alpha_max) / 2), (1.0, cfg.alpha_min)):
        parts.append(
            f'<text x="{ml - 8}" y="{mt + frac * plot_h + 4}" text-anchor="end" '
            f'font-size="12">{value:g}</text>'
        )
    parts.append('</svg>')
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")
