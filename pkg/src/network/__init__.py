"""Multilayer perceptron, forward pass, loss and checkpoints"""
