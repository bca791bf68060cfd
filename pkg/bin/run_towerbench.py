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
Run a TowerBench experiment from the command line.

    run_towerbench.py selftest
    run_towerbench.py residual-sweep --config run.ini --out sweep.csv
    run_towerbench.py plot-script sweep.csv > plot_sweep.py

"""

import sys

from towerbench.cli import main


if __name__ == '__main__':
    sys.exit(main())
