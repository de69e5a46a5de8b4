"""Backward rules: VBP, FBA, FBA + ITD-y, FBA + ITD-dy"""
