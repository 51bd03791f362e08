from .reportView import ReportView

__all__ = ['ReportView']
