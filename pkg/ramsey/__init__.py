"""Certificate-producing extraction of monochromatic trees and rainbow paths."""
