#include <rootclust/cli.hpp>

int main(int argc, char** argv) {
    return rootclust::cli::run(argc, argv);
}
