"""
This module contains CLI scripts for the sfstri package.
"""
