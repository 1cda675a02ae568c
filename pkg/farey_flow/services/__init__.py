"""Services: continued fractions, geometry, coding, section dynamics, measures, rendering."""
