#ifndef BLANC_EMBEDDED_DATA_HPP
#define BLANC_EMBEDDED_DATA_HPP

#include <string>
#include <string_view>
#include <vector>

// Contents of data/*.txt, compiled in by CMake (see embed_data.cmake).
namespace blanc::data {

std::string_view abbreviations_txt();
std::string_view stopwords_txt();
std::string_view reference_vocab_txt();

/// Non-empty lines that do not start with '#', trimmed.
std::vector<std::string> list_lines(std::string_view text);

}  // namespace blanc::data

#endif  // BLANC_EMBEDDED_DATA_HPP
