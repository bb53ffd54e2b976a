"""Vacuum refraction and the induced photon magnetic moment in a strong magnetic field."""
from .lagrangian import FieldPoint
from .optics import PhotonKinematics
from .specfun import CONSTANTS, DomainError

__all__ = ["CONSTANTS", "DomainError", "FieldPoint", "PhotonKinematics"]
__version__ = "0.1.0"
