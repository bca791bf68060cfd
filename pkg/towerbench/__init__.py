####################################################################
###     _____                     ____                  _        ###
###    |_   _|____      _____ _ _| __ )  ___ _ __   ___| |__     ###
###      | |/ _ \ \ /\ / / _ \ '__|  _ \ / _ \ '_ \ / __| '_ \   ###
###      | | (_) \ V  V /  __/ |  | |_) |  __/ | | | (__| | | |  ###
###      |_|\___/ \_/\_/ \___|_|  |____/ \___|_| |_|\___|_| |_|  ###
###                                                              ###
###--------------------------------------------------------------###
###                                                              ###
### This file is part of the TowerBench package for numerical    ###
### checks of bubble-tower constructions for the fractional      ###
### Laplacian.                                                   ###
###                                                              ###
### Copyright (c) 2026 by the TowerBench developers.             ###
###                                                              ###
###--------------------------------------------------------------###
###                                                              ###
### For license info, please see the README and LICENSE files    ###
### in the main directory.                                       ###
###                                                              ###
###--------------------------------------------------------------###

"""
TowerBench: numerical checks of bubble-tower constructions for the
perturbed critical fractional equation

.. math:: (-\\Delta)^s u = K(|y'|, y'') u^{\\frac{N+2s}{N-2s} \\pm \\epsilon}.

"""

__version__ = '0.1'
