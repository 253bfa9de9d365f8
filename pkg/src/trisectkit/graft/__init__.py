"""Grid-sampled differential forms and grafted contact forms."""

from .forms import Axis, FormField, GridChart, exterior_derivative, wedge
from .fubini import PositivityReport, fs_liouville, verify_fs_identities
from .graft import (GraftConfig, GraftInputs, SingularPoint, calabi_positive_path, compatibility_check,
                    contact_margin, grafted_form, tune_graft)

__all__ = [
    "Axis", "FormField", "GraftConfig", "GraftInputs", "GridChart", "PositivityReport", "SingularPoint",
    "calabi_positive_path", "compatibility_check", "contact_margin", "exterior_derivative", "fs_liouville",
    "grafted_form", "tune_graft", "verify_fs_identities", "wedge",
]
