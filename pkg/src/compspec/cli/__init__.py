from .main import EXIT_ERROR, EXIT_EXACT, EXIT_PARTIAL, build_parser, main, parse_lambda
from .plotdata import SAMPLES_PER_CIRCLE, boundary_samples, write_plot_data
from .report import (
    Report,
    build_report,
    describe_descriptor,
    describe_set,
    descriptor_from_json,
    descriptor_to_json,
    set_from_json,
    set_to_json,
)

__all__ = [
    "EXIT_ERROR",
    "EXIT_EXACT",
    "EXIT_PARTIAL",
    "Report",
    "SAMPLES_PER_CIRCLE",
    "boundary_samples",
    "build_parser",
    "build_report",
    "describe_descriptor",
    "describe_set",
    "descriptor_from_json",
    "descriptor_to_json",
    "main",
    "parse_lambda",
    "set_from_json",
    "set_to_json",
    "write_plot_data",
]
