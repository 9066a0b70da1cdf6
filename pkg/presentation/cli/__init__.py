# CLI Package
# hsl-verify subcommands
