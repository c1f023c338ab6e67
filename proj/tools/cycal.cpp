// Placeholder main; the job-script front end lands with the CLI module.
int main() { return 0; }
