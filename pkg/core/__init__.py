# -*- coding: utf-8 -*-
from .errors import (
    AliasWarning, AxisMismatch, ConfigError, DomainError, GridMismatch,
    NonInvertible, QuatSplineError, ZeroBase, ZeroFilter
)
from .quaternion import AxialElement, Axis, ComplexQuaternion, QuaternionicOrder, RealQuaternion
from .bspline import GridFunction, IntegerSymbol
from .fundamental import CoeffTable, FilterConstants, ZeroFreeVerdict
from .sampling import FrameBounds, SplineSignal
from .table_handler import TableHandler
from .thread_pool import ThreadPoolManager, VerificationTask, WorkerResult
