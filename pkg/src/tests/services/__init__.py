# Services tests package