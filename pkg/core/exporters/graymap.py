"""
Binary portable graymap (P5, maxval 255) output of escape grids.
"""
import logging
from typing import Optional

from PIL import Image

from core.exporters.report_exporter import format_rows_to_csv, write_text
from core.models.escape import EscapeGrid

logger = logging.getLogger(__name__)

GRID_COLUMNS = ("x", "y", "survived_steps", "final_log_modulus")


def write_graymap(grid: EscapeGrid, path: str):
    """Pixel intensity 255 * survived_steps / max_iter; row 0 is the top edge."""
    image = Image.fromarray(grid.intensities())
    image.save(path, format="PPM")
    logger.info("wrote %dx%d graymap to %s", grid.width, grid.height, path)


def export_grid(grid: EscapeGrid, image_path: Optional[str] = None, csv_path: Optional[str] = None):
    """
    Writes the graymap and/or the per-pixel CSV.

    Args:
        grid: rendered escape grid.
        image_path: P5 output path, skipped when None.
        csv_path: CSV output path (x, y, survived_steps, final_log_modulus), skipped when None.
    """
    if image_path:
        write_graymap(grid, image_path)
    if csv_path:
        write_text(csv_path, format_rows_to_csv(grid.to_rows(), GRID_COLUMNS))
        logger.info("wrote escape grid CSV to %s", csv_path)
