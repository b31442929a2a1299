from ._core import (
    ObjSense,
    MatrixFormat,
    HessianFormat,
    SolutionStatus,
    BasisValidity,
    HighsModelStatus,
    HighsPresolveStatus,
    HighsBasisStatus,
    HighsVarType,
    HighsOptionType,
    HighsInfoType,
    HighsStatus,
    HighsLogType,
    IisStrategy,
    IisBoundStatus,
    HighsSparseMatrix,
    HighsLp,
    HighsHessian,
    HighsModel,
    HighsInfo,
    HighsOptions,
    _Highs,  # type: ignore
    HighsIis,
    HighsSolution,
    HighsObjectiveSolution,
    HighsBasis,
    HighsRangingRecord,
    HighsRanging,
    kHighsInf,
    kHighsIInf,
    kHighsUndefined,
    HighsLinearObjective,
    HIGHS_VERSION_MAJOR,
    HIGHS_VERSION_MINOR,
    HIGHS_VERSION_PATCH,
    simplex_constants,  # type: ignore
    cb,  # type: ignore
    kSolutionStatusNone,
    kSolutionStatusInfeasible,
    kSolutionStatusFeasible,
    kBasisValidityInvalid,
    kBasisValidityValid,
)

from .highs import Highs

__all__ = [
    "__doc__",
    "ObjSense",
    "MatrixFormat",
    "HessianFormat",
    "SolutionStatus",
    "BasisValidity",
    "HighsModelStatus",
    "HighsPresolveStatus",
    "HighsBasisStatus",
    "HighsVarType",
    "HighsOptionType",
    "HighsInfoType",
    "HighsStatus",
    "HighsLogType",
    "IisStrategy",
    "IisBoundStatus",
    "HighsSparseMatrix",
    "HighsLp",
    "HighsHessian",
    "HighsModel",
    "HighsInfo",
    "HighsOptions",
    "_Highs",
    "Highs",
    "HighsIis",
    "HighsSolution",
    "HighsObjectiveSolution",
    "HighsBasis",
    "HighsRangingRecord",
    "HighsRanging",
    "kHighsInf",
    "kHighsIInf",
    "kHighsUndefined",
    "HIGHS_VERSION_MAJOR",
    "HIGHS_VERSION_MINOR",
    "HIGHS_VERSION_PATCH",
    "simplex_constants",
    "cb",
    "kSolutionStatusNone",
    "kSolutionStatusInfeasible",
    "kSolutionStatusFeasible",
    "kBasisValidityInvalid",
    "kBasisValidityValid",
]
