from .catalog import CATALOG, catalog
from .point_file import format_points, parse_points, read_point_file, write_point_file
from .report import (
    SCHEMA_VERSION,
    SWEEP_COLUMNS,
    ReportDocument,
    build_report,
    render_text,
    sweep_csv,
    sweep_html,
    write_sweep_csv,
    write_sweep_html,
)
