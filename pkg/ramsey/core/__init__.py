"""Data types for edge-colored complete graphs, trees and certificates."""
