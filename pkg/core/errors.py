# -*- coding: utf-8 -*-
"""
Exception types shared by the calculus modules
"""

from typing import Any, Dict, Optional


class CantorError(Exception):
    """Base exception for calculus errors"""

    error_code = "error"

    def __init__(
        self,
        error_msg: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        self.error_msg = error_msg
        if error_code is not None:
            self.error_code = error_code
        self.details = details or {}
        super().__init__(self.error_msg)

    def to_dict(self) -> Dict[str, Any]:
        """Convert error to dictionary for API and json output"""
        return {
            "errcode": self.error_code,
            "errmsg": self.error_msg,
            "details": self.details,
        }


class PreconditionError(CantorError):
    """An operation was called outside its precondition"""

    error_code = "precondition"


class InvalidPointError(CantorError):
    """A point does not belong to the space (or stratum) it was used with"""

    error_code = "invalid_point"


class IndexOutOfRangeError(CantorError):
    """An enumeration index is past the end of a finite stratum"""

    error_code = "index_out_of_range"
