"""Command-line surface: catalog ingestion, disk cache, reproduction reports."""
