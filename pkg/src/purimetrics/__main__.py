from src.purimetrics.cli import main

if __name__ == "__main__":
    main()
