#include "vcmbench/dataset/annotations.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

#include <json.hpp>

#include "vcmbench/error.hpp"

namespace vcmbench {

using nlohmann::json;

namespace {

const json& require_array(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || !it->is_array()) {
    fail(ErrorKind::kParse, std::string("COCO document lacks a '") + key + "' array");
  }
  return *it;
}

long long require_id(const json& obj, const char* key, const char* what) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    fail(ErrorKind::kParse,
         std::string(what) + " entry lacks integer '" + key + "'");
  }
  return it->get<long long>();
}

std::string fmt_number(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

std::string frame_item_id(int frame_index) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "frame_%06d", frame_index);
  return buf;
}

CocoDocument parse_coco(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kParse, std::string("COCO JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::kParse, "COCO JSON root must be an object");

  CocoDocument out;
  std::map<long long, std::size_t> image_index;
  for (const auto& im : require_array(doc, "images")) {
    CocoImage img;
    img.id = require_id(im, "id", "image");
    img.file_name = im.value("file_name", std::string{});
    img.width = im.value("width", 0);
    img.height = im.value("height", 0);
    img.item_id = img.file_name.empty()
                      ? std::to_string(img.id)
                      : std::filesystem::path(img.file_name).stem().string();
    if (image_index.count(img.id)) {
      fail(ErrorKind::kValidation, "duplicate image id " + std::to_string(img.id));
    }
    image_index[img.id] = 0;
    out.images.push_back(std::move(img));
  }
  std::sort(out.images.begin(), out.images.end(),
            [](const CocoImage& a, const CocoImage& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < out.images.size(); ++i) {
    image_index[out.images[i].id] = i;
  }

  std::map<long long, std::string> categories;
  for (const auto& c : require_array(doc, "categories")) {
    categories[require_id(c, "id", "category")] = c.value("name", std::string{});
  }

  struct Keyed {
    long long image_id;
    long long ann_id;
    GroundTruthObject obj;
  };
  std::vector<Keyed> keyed;
  for (const auto& a : require_array(doc, "annotations")) {
    const long long ann_id = require_id(a, "id", "annotation");
    const long long image_id = require_id(a, "image_id", "annotation");
    const long long cat_id = require_id(a, "category_id", "annotation");
    auto img = image_index.find(image_id);
    if (img == image_index.end()) {
      fail(ErrorKind::kValidation, "annotation " + std::to_string(ann_id) +
                                       " references unknown image id " +
                                       std::to_string(image_id));
    }
    auto cat = categories.find(cat_id);
    if (cat == categories.end()) {
      fail(ErrorKind::kValidation, "annotation " + std::to_string(ann_id) +
                                       " references unknown category id " +
                                       std::to_string(cat_id));
    }
    auto bbox = a.find("bbox");
    if (bbox == a.end() || !bbox->is_array() || bbox->size() != 4 ||
        !std::all_of(bbox->begin(), bbox->end(),
                     [](const json& v) { return v.is_number(); })) {
      fail(ErrorKind::kParse, "annotation " + std::to_string(ann_id) +
                                  " needs a numeric [x, y, w, h] bbox");
    }
    const double x = (*bbox)[0].get<double>();
    const double y = (*bbox)[1].get<double>();
    const double w = (*bbox)[2].get<double>();
    const double h = (*bbox)[3].get<double>();
    if (!(w > 0.0) || !(h > 0.0)) {
      fail(ErrorKind::kValidation,
           "annotation " + std::to_string(ann_id) + " has a degenerate bbox");
    }
    GroundTruthObject obj;
    obj.item_id = out.images[img->second].item_id;
    obj.category = cat->second;
    obj.box = {x, y, x + w, y + h};
    if (auto t = a.find("track_id"); t != a.end() && t->is_number_integer()) {
      obj.track_id = t->get<int>();
    }
    keyed.push_back({image_id, ann_id, std::move(obj)});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return a.image_id != b.image_id ? a.image_id < b.image_id : a.ann_id < b.ann_id;
  });
  out.objects.reserve(keyed.size());
  for (auto& k : keyed) out.objects.push_back(std::move(k.obj));
  return out;
}

std::vector<GroundTruthObject> parse_coco_annotations(std::string_view json_text) {
  return parse_coco(json_text).objects;
}

std::string write_coco(const std::vector<CocoImage>& images,
                       const std::vector<GroundTruthObject>& objects) {
  json doc;
  doc["images"] = json::array();
  std::map<std::string, long long> id_of_item;
  for (const auto& im : images) {
    doc["images"].push_back({{"id", im.id},
                             {"file_name", im.file_name},
                             {"width", im.width},
                             {"height", im.height}});
    id_of_item[im.item_id] = im.id;
  }
  std::map<std::string, long long> cat_ids;
  for (const auto& o : objects) {
    cat_ids.emplace(o.category, 0);
  }
  long long next_cat = 1;
  doc["categories"] = json::array();
  for (auto& [name, id] : cat_ids) {
    id = next_cat++;
    doc["categories"].push_back({{"id", id}, {"name", name}});
  }
  doc["annotations"] = json::array();
  long long ann_id = 1;
  for (const auto& o : objects) {
    auto it = id_of_item.find(o.item_id);
    if (it == id_of_item.end()) {
      fail(ErrorKind::kValidation, "object references unknown item " + o.item_id);
    }
    json a = {{"id", ann_id++},
              {"image_id", it->second},
              {"category_id", cat_ids[o.category]},
              {"bbox", {o.box.x_min, o.box.y_min, o.box.width(), o.box.height()}}};
    if (o.track_id) a["track_id"] = *o.track_id;
    doc["annotations"].push_back(std::move(a));
  }
  return doc.dump(1) + "\n";
}

std::vector<GroundTruthObject> parse_track_csv(std::string_view csv_text,
                                               std::string_view category) {
  std::vector<GroundTruthObject> out;
  std::istringstream in{std::string(csv_text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> fields;
    std::stringstream ls(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ls, cell, ',')) {
      double v = 0.0;
      const char* b = cell.data();
      while (*b == ' ') ++b;
      const char* e = cell.data() + cell.size();
      while (e > b && e[-1] == ' ') --e;
      auto [p, ec] = std::from_chars(b, e, v);
      if (ec != std::errc{} || p != e) {
        numeric = false;
        break;
      }
      fields.push_back(v);
    }
    if (!numeric) {
      if (line_no == 1) continue;  // header row
      fail(ErrorKind::kParse, "track CSV line " + std::to_string(line_no) +
                                  ": non-numeric field");
    }
    if (fields.size() != 6) {
      fail(ErrorKind::kParse, "track CSV line " + std::to_string(line_no) +
                                  ": expected 6 fields, got " +
                                  std::to_string(fields.size()));
    }
    if (!(fields[4] > 0.0) || !(fields[5] > 0.0)) {
      fail(ErrorKind::kValidation, "track CSV line " + std::to_string(line_no) +
                                       ": degenerate box");
    }
    if (fields[0] < 0) {
      fail(ErrorKind::kValidation, "track CSV line " + std::to_string(line_no) +
                                       ": negative frame index");
    }
    GroundTruthObject g;
    const int frame = static_cast<int>(fields[0]);
    g.item_id = frame_item_id(frame);
    g.category = std::string(category);
    g.box = {fields[2], fields[3], fields[2] + fields[4], fields[3] + fields[5]};
    g.track_id = static_cast<int>(fields[1]);
    g.frame_index = frame;
    out.push_back(std::move(g));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return *a.frame_index != *b.frame_index ? *a.frame_index < *b.frame_index
                                            : *a.track_id < *b.track_id;
  });
  return out;
}

std::string write_track_csv(const std::vector<GroundTruthObject>& objects) {
  std::string out = "frame,track_id,x,y,w,h\n";
  for (const auto& o : objects) {
    if (!o.track_id || !o.frame_index) {
      fail(ErrorKind::kValidation, "track CSV needs track_id and frame_index");
    }
    out += std::to_string(*o.frame_index) + "," + std::to_string(*o.track_id) +
           "," + fmt_number(o.box.x_min) + "," + fmt_number(o.box.y_min) + "," +
           fmt_number(o.box.width()) + "," + fmt_number(o.box.height()) + "\n";
  }
  return out;
}

}  // namespace vcmbench
