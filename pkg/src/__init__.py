"""biobp - Credit-Assignment Lab (VBP, FBA, ITD-y, ITD-dy)"""
__version__ = "1.0.0"
