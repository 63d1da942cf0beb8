from .schema import (
    Verdict,
    DualCertificate,
    ConstraintCheck,
    EdgeAuditReport,
    ScanPoint,
    ScanViolation,
    StructuralScanReport,
)
from .certificate import dual_fit, check_constraint_i, edge_value
from .audit import audit_instance, audit_edge
from .scan import critical_threshold, threshold_from_price, structural_scan

__all__ = [
    "Verdict",
    "DualCertificate",
    "ConstraintCheck",
    "EdgeAuditReport",
    "ScanPoint",
    "ScanViolation",
    "StructuralScanReport",
    "dual_fit",
    "check_constraint_i",
    "edge_value",
    "audit_instance",
    "audit_edge",
    "critical_threshold",
    "threshold_from_price",
    "structural_scan",
    ]
