from figgen.records import SchemaError, load_records
from figgen.plot import METHOD_LABELS, box_stats, build_figure, render_boxplots

__all__ = [
    "SchemaError",
    "load_records",
    "METHOD_LABELS",
    "box_stats",
    "build_figure",
    "render_boxplots",
]
