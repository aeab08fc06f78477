// Copyright 2026 The wisenetmd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wisenetmd/frame_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#ifdef WISENETMD_HAVE_PNG
#include <png.h>
#endif
#ifdef WISENETMD_HAVE_JPEG
#include <jpeglib.h>
#endif

namespace wisenetmd {

namespace {

std::string lower_extension(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

bool is_image_extension(const std::string& ext) {
    static constexpr std::array<const char*, 8> kExts = {".pgm", ".ppm", ".pnm", ".png", ".jpg", ".jpeg", ".bmp", ".jpe"};
    return std::any_of(kExts.begin(), kExts.end(), [&](const char* e) { return ext == e; });
}

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if(!in)
        throw Error(ErrorKind::io, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

[[noreturn]] void decode_error(const fs::path& path, const std::string& why) {
    throw Error(ErrorKind::decode, path.string() + ": " + why);
}

// ---- PNM -------------------------------------------------------------------

class PnmHeaderParser {
public:
    PnmHeaderParser(const std::vector<std::uint8_t>& bytes, const fs::path& path) : bytes_(bytes), path_(path) {}

    int next_int() {
        skip_space_and_comments();
        if(pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_]))
            decode_error(path_, "malformed PNM header");
        long value = 0;
        while(pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_++] - '0');
            if(value > (1L << 24))
                decode_error(path_, "PNM header value out of range");
        }
        return static_cast<int>(value);
    }

    // exactly one whitespace byte separates maxval from the raster
    std::size_t raster_offset() {
        if(pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
            decode_error(path_, "malformed PNM header");
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while(pos_ < bytes_.size()) {
            if(bytes_[pos_] == '#') {
                while(pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else if(std::isspace(bytes_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<std::uint8_t>& bytes_;
    const fs::path& path_;
    std::size_t pos_ = 2;
};

Frame decode_pnm(const std::vector<std::uint8_t>& bytes, const fs::path& path) {
    if(bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
        decode_error(path, "not a binary PGM/PPM file (expected P5 or P6)");
    const int channels = bytes[1] == '6' ? 3 : 1;
    PnmHeaderParser parser(bytes, path);
    const int width = parser.next_int();
    const int height = parser.next_int();
    const int maxval = parser.next_int();
    if(maxval != 255)
        decode_error(path, "only maxval 255 is supported");
    if(width <= 0 || height <= 0)
        decode_error(path, "empty PNM raster");
    const std::size_t offset = parser.raster_offset();
    const std::size_t expected = static_cast<std::size_t>(width) * height * channels;
    if(bytes.size() < offset + expected)
        decode_error(path, "truncated PNM raster");
    Frame frame(width, height, channels);
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(offset), expected, frame.data().begin());
    return frame;
}

// ---- BMP -------------------------------------------------------------------

std::uint32_t le32(const std::vector<std::uint8_t>& b, std::size_t at) {
    return b[at] | (b[at + 1] << 8) | (b[at + 2] << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}
std::uint16_t le16(const std::vector<std::uint8_t>& b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

Frame decode_bmp(const std::vector<std::uint8_t>& bytes, const fs::path& path) {
    if(bytes.size() < 54 || bytes[0] != 'B' || bytes[1] != 'M')
        decode_error(path, "not a BMP file");
    const std::uint32_t data_offset = le32(bytes, 10);
    const std::uint32_t header_size = le32(bytes, 14);
    const int width = static_cast<std::int32_t>(le32(bytes, 18));
    const int raw_height = static_cast<std::int32_t>(le32(bytes, 22));
    const int bpp = le16(bytes, 28);
    const std::uint32_t compression = le32(bytes, 30);
    if(compression != 0 && !(compression == 3 && bpp == 32))
        decode_error(path, "compressed BMP files are not supported");
    if(bpp != 8 && bpp != 24 && bpp != 32)
        decode_error(path, "unsupported BMP bit depth " + std::to_string(bpp));
    const bool top_down = raw_height < 0;
    const int height = top_down ? -raw_height : raw_height;
    if(width <= 0 || height <= 0)
        decode_error(path, "empty BMP raster");

    std::vector<std::array<std::uint8_t, 3>> palette;
    bool gray_palette = true;
    if(bpp == 8) {
        std::uint32_t colors = le32(bytes, 46);
        if(colors == 0)
            colors = 256;
        const std::size_t pal_at = 14 + header_size;
        if(bytes.size() < pal_at + colors * 4)
            decode_error(path, "truncated BMP palette");
        for(std::uint32_t i = 0; i < colors; ++i) {
            const std::array<std::uint8_t, 3> rgb = {bytes[pal_at + i * 4 + 2], bytes[pal_at + i * 4 + 1], bytes[pal_at + i * 4]};
            gray_palette = gray_palette && rgb[0] == rgb[1] && rgb[1] == rgb[2];
            palette.push_back(rgb);
        }
    }
    const int channels = (bpp == 8 && gray_palette) ? 1 : 3;
    const std::size_t stride = ((static_cast<std::size_t>(width) * bpp + 31) / 32) * 4;
    if(bytes.size() < data_offset + stride * height)
        decode_error(path, "truncated BMP raster");

    Frame frame(width, height, channels);
    for(int y = 0; y < height; ++y) {
        const int src_row = top_down ? y : height - 1 - y;
        const std::uint8_t* src = bytes.data() + data_offset + stride * src_row;
        std::uint8_t* dst = frame.row(y);
        for(int x = 0; x < width; ++x) {
            if(bpp == 8) {
                const std::uint8_t idx = src[x];
                if(idx >= palette.size())
                    decode_error(path, "BMP palette index out of range");
                if(channels == 1) {
                    dst[x] = palette[idx][0];
                } else {
                    std::copy(palette[idx].begin(), palette[idx].end(), dst + 3 * x);
                }
            } else {
                const std::uint8_t* p = src + x * (bpp / 8);
                dst[3 * x] = p[2];
                dst[3 * x + 1] = p[1];
                dst[3 * x + 2] = p[0];
            }
        }
    }
    return frame;
}

// ---- PNG -------------------------------------------------------------------

#ifdef WISENETMD_HAVE_PNG
Frame decode_png(const std::vector<std::uint8_t>& bytes, const fs::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    if(!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
        decode_error(path, std::string("PNG: ") + image.message);
    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    Frame frame(static_cast<int>(image.width), static_cast<int>(image.height), color ? 3 : 1);
    if(!png_image_finish_read(&image, nullptr, frame.data().data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        decode_error(path, "PNG: " + msg);
    }
    return frame;
}
#endif

// ---- JPEG ------------------------------------------------------------------

#ifdef WISENETMD_HAVE_JPEG
struct JpegErrorManager {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

extern "C" void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

// Kept free of C++ objects with nontrivial destructors between setjmp and
// longjmp; the caller owns the output buffer.
bool decode_jpeg_raw(const std::vector<std::uint8_t>& bytes, std::vector<std::uint8_t>& out, int& width, int& height,
                     int& channels, char* message) {
    jpeg_decompress_struct cinfo;
    JpegErrorManager err;
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;
    if(setjmp(err.jump)) {
        std::strncpy(message, err.message, JMSG_LENGTH_MAX);
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_start_decompress(&cinfo);
    width = static_cast<int>(cinfo.output_width);
    height = static_cast<int>(cinfo.output_height);
    channels = cinfo.output_components;
    out.resize(static_cast<std::size_t>(width) * height * channels);
    while(cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = out.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * channels;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return true;
}

Frame decode_jpeg(const std::vector<std::uint8_t>& bytes, const fs::path& path) {
    std::vector<std::uint8_t> raw;
    int width = 0, height = 0, channels = 0;
    char message[JMSG_LENGTH_MAX] = {0};
    if(!decode_jpeg_raw(bytes, raw, width, height, channels, message))
        decode_error(path, std::string("JPEG: ") + message);
    Frame frame(width, height, channels);
    std::copy(raw.begin(), raw.end(), frame.data().begin());
    return frame;
}
#endif

void ensure_parent_exists(const fs::path& path) {
    const fs::path parent = path.parent_path();
    if(!parent.empty() && !fs::is_directory(parent))
        throw Error(ErrorKind::io, "output directory does not exist: " + parent.string());
}

} // namespace

bool png_supported() noexcept {
#ifdef WISENETMD_HAVE_PNG
    return true;
#else
    return false;
#endif
}

bool jpeg_supported() noexcept {
#ifdef WISENETMD_HAVE_JPEG
    return true;
#else
    return false;
#endif
}

Frame read_image(const fs::path& path) {
    const std::string ext = lower_extension(path);
    if(!is_image_extension(ext))
        decode_error(path, "unsupported image format '" + ext + "'");
    const std::vector<std::uint8_t> bytes = read_bytes(path);
    if(ext == ".pgm" || ext == ".ppm" || ext == ".pnm")
        return decode_pnm(bytes, path);
    if(ext == ".bmp")
        return decode_bmp(bytes, path);
    if(ext == ".png") {
#ifdef WISENETMD_HAVE_PNG
        return decode_png(bytes, path);
#else
        decode_error(path, "PNG support not compiled in");
#endif
    }
#ifdef WISENETMD_HAVE_JPEG
    return decode_jpeg(bytes, path);
#else
    decode_error(path, "JPEG support not compiled in");
#endif
}

BinaryMask read_mask(const fs::path& path) {
    const Frame image = read_image(path);
    BinaryMask mask(image.width(), image.height());
    for(std::size_t px = 0; px < mask.pixel_count(); ++px)
        mask[px] = image.pixel(px)[0] > 127 ? kForeground : kBackground;
    return mask;
}

GtFrame read_gt(const fs::path& path) {
    const Frame image = read_image(path);
    GtFrame gt(image.width(), image.height());
    for(std::size_t px = 0; px < gt.pixel_count(); ++px) {
        const std::uint8_t v = image.pixel(px)[0];
        if(v != 0 && v != 50 && v != 85 && v != 170 && v != 255)
            decode_error(path, "ground-truth label " + std::to_string(v) + " is not a CDnet label");
        gt[px] = v;
    }
    return gt;
}

void write_pnm(const Frame& frame, const fs::path& path) {
    if(frame.channels() != 1 && frame.channels() != 3)
        throw Error(ErrorKind::invalid_argument, "PNM output needs 1 or 3 channels");
    ensure_parent_exists(path);
    std::ofstream out(path, std::ios::binary);
    if(!out)
        throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
    out << (frame.channels() == 3 ? "P6" : "P5") << '\n' << frame.width() << ' ' << frame.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.data().data()), static_cast<std::streamsize>(frame.size()));
    if(!out)
        throw Error(ErrorKind::io, "write failed for " + path.string());
}

void write_png(const Frame& frame, const fs::path& path) {
#ifdef WISENETMD_HAVE_PNG
    ensure_parent_exists(path);
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(frame.width());
    image.height = static_cast<png_uint_32>(frame.height());
    image.format = frame.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    if(!png_image_write_to_file(&image, path.c_str(), 0, frame.data().data(), 0, nullptr))
        throw Error(ErrorKind::io, "PNG write failed for " + path.string() + ": " + image.message);
#else
    (void)frame;
    throw Error(ErrorKind::invalid_argument, "PNG support not compiled in (" + path.string() + ")");
#endif
}

void write_gray(const Frame& frame, const fs::path& path) {
    if(lower_extension(path) == ".png")
        write_png(frame, path);
    else
        write_pnm(frame, path);
}

void write_mask(const BinaryMask& mask, const fs::path& path) {
    Frame gray(mask.width(), mask.height(), 1);
    std::copy(mask.data().begin(), mask.data().end(), gray.data().begin());
    write_gray(gray, path);
}

std::string mask_filename(int frame_index, const std::string& extension) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "bin%06d", frame_index);
    return buf + extension;
}

std::vector<fs::path> list_image_files(const fs::path& dir) {
    if(!fs::is_directory(dir))
        throw Error(ErrorKind::missing_directory, "not a directory: " + dir.string());
    std::vector<fs::path> files;
    for(const auto& entry : fs::directory_iterator(dir))
        if(entry.is_regular_file() && is_image_extension(lower_extension(entry.path())))
            files.push_back(entry.path());
    if(files.empty())
        throw Error(ErrorKind::empty_sequence, "no image files in " + dir.string());
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
        return a.filename().string() < b.filename().string();
    });
    return files;
}

SequenceReader::SequenceReader(const fs::path& dir) : files_(list_image_files(dir)) {}

std::optional<Frame> SequenceReader::next() {
    if(next_ >= files_.size())
        return std::nullopt;
    const fs::path& path = files_[next_];
    Frame frame = read_image(path);
    if(frame.channels() != 1 && frame.channels() != 3)
        decode_error(path, "unsupported channel count");
    if(frame.width() < kMinFrameSide || frame.height() < kMinFrameSide)
        throw Error(ErrorKind::geometry, path.string() + ": frames must be at least 5x5");
    if(width_ < 0) {
        width_ = frame.width();
        height_ = frame.height();
        channels_ = frame.channels();
    } else if(frame.width() != width_ || frame.height() != height_ || frame.channels() != channels_) {
        throw Error(ErrorKind::geometry, path.string() + ": frame is " + std::to_string(frame.width()) + "x" +
                                             std::to_string(frame.height()) + "x" + std::to_string(frame.channels()) +
                                             ", sequence is " + std::to_string(width_) + "x" + std::to_string(height_) +
                                             "x" + std::to_string(channels_));
    }
    ++next_;
    return frame;
}

std::vector<Frame> load_sequence(const SequenceSpec& spec) {
    SequenceReader reader(spec.input_dir);
    std::vector<Frame> frames;
    frames.reserve(reader.size());
    while(auto frame = reader.next())
        frames.push_back(std::move(*frame));
    return frames;
}

TemporalRoi parse_temporal_roi(const std::string& text) {
    std::istringstream in(text);
    std::string a, b, extra;
    if(!(in >> a >> b) || (in >> extra))
        throw Error(ErrorKind::parse, "temporalROI must contain exactly two integers");
    auto to_int = [](const std::string& s) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(s, &used);
        } catch(const std::exception&) {
            throw Error(ErrorKind::parse, "temporalROI value '" + s + "' is not an integer");
        }
        if(used != s.size())
            throw Error(ErrorKind::parse, "temporalROI value '" + s + "' is not an integer");
        return value;
    };
    TemporalRoi roi{to_int(a), to_int(b)};
    if(roi.first < 1 || roi.first > roi.last)
        throw Error(ErrorKind::parse, "temporalROI needs 1 <= first <= last");
    return roi;
}

SequenceSpec load_cdnet_sequence(const fs::path& root) {
    SequenceSpec spec;
    spec.input_dir = root / "input";
    if(!fs::is_directory(spec.input_dir))
        throw Error(ErrorKind::missing_directory, "no input/ directory under " + root.string());
    if(fs::is_directory(root / "groundtruth"))
        spec.gt_dir = root / "groundtruth";
    for(const char* ext : {".bmp", ".png", ".pgm", ".ppm", ".jpg"}) {
        const fs::path roi = root / (std::string("ROI") + ext);
        if(fs::is_regular_file(roi)) {
            spec.roi_mask = read_mask(roi);
            break;
        }
    }
    const fs::path window = root / "temporalROI.txt";
    if(fs::is_regular_file(window)) {
        std::ifstream in(window);
        std::stringstream body;
        body << in.rdbuf();
        spec.temporal_roi = parse_temporal_roi(body.str());
    }
    return spec;
}

} // namespace wisenetmd
