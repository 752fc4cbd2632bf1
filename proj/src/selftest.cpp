namespace rootdual {}
