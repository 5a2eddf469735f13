#include <exception>
#include <iostream>

#include "qtransfer/scenario.hpp"

int main(int argc, char** argv) {
    using namespace qtransfer::scenario;
    try {
        const ScenarioConfig cfg = parse_args(argc, argv);
        return run(cfg);
    } catch (const HelpRequested& help) {
        std::cout << help.text;
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "simulate: " << e.what() << "\n"
                  << "run 'simulate --help' for the flag list\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "simulate: " << e.what() << "\n";
        return 1;
    }
}
