from .identity_auditor import IdentityAuditor, audit_identity, judge
from .identity_catalog import IDENTITY_CATALOG, build_instance, get_entry

__all__ = ['IdentityAuditor', 'audit_identity', 'judge', 'IDENTITY_CATALOG', 'build_instance', 'get_entry']
