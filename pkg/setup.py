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
# -*- coding: utf-8 -*-
from setuptools import setup

setup(
    name='TowerBench',
    version='0.1',
    packages=['towerbench',
              'towerbench.operators',
              'towerbench.reduction',
              'towerbench.validation',
              'towerbench.test'],

    scripts=['bin/run_towerbench.py'],

    install_requires=['numpy',
                      'scipy',
                      'decorator'],

    extras_require = {
        "test" : ["pytest"],
        "doc" : ["sphinx"]
        },

    #metadata
    author=u'The TowerBench developers',
    description='Numerical checks of bubble towers for the fractional Laplacian',
    long_description=open('README.md').read(),
    license='GPL license, see LICENSE',
    keywords = 'fractional laplacian, bubble towers, Lyapunov-Schmidt reduction',
    url='',
    download_url = '',
)
