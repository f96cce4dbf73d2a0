class Slick {
  constructor(element) {
    this.element = element;
    this.slides = [];
  }
  slickAdd(markup, index, addBefore) {
    if (addBefore) {
      this.slides.splice(index, 0, markup);
    } else {
      this.slides.push(markup);
    }
    return this.slides.length;
  }
  // Method alias
  addSlide(markup, index, addBefore) { return this.slickAdd(markup, index, addBefore); }
}
