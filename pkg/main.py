from api.commands.commands import cli

if __name__ == "__main__":
    cli(prog_name="itemsum")

# python main.py summarize article.json --annotations article.jsonl --out out
